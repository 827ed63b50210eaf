// Copyright 2026 The ergocert Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Lyapunov drift and minorization checks: small sets, geometric drift
// PV <= gamma V + b, the additive drift PV <= V - 1 + b 1_C and the
// occupation lower bounds they imply.

#ifndef ERGOCERT_DRIFT_HPP_
#define ERGOCERT_DRIFT_HPP_

#include <vector>

#include "ergocert/certificate.hpp"
#include "ergocert/kernel.hpp"

namespace ergocert {

// inf_{x in C} P(x, .) >= alpha nu. Reports alpha and nu (series "nu").
// Throws on empty C.
Certificate CheckSmallness(const Kernel& p, const StateSet& c);

// PV <= gamma V + b on [V < inf], r > 2b / (1 - gamma), [V <= r] small.
Certificate CheckAssumptionA(const Kernel& p, const StateFn& v, double gamma, double b, double r);

// PV <= gamma V + b 1_S with V >= 1, S small.
Certificate CheckAssumptionAPrime(const Kernel& p, const StateFn& v, double gamma, double b,
                                  const StateSet& s);

// PV <= V - 1 + b 1_C and the tail sequence sup_{x in C} P(x, A_n) over a
// decreasing family. On a finite space the domination measure
// max_{x in C} P(x, .) is finite, so the uniform additivity part always
// holds; the tail sequence is reported as evidence.
Certificate CheckAssumptionB(const Kernel& p, const StateFn& v, double b, const StateSet& c,
                             const std::vector<StateSet>& tail_sets = {});

// PV <= V - 1 + b 1_C with a function b, checked on the whole space.
Certificate CheckGeneralizedDrift(const Kernel& p, const StateFn& v, const StateFn& b_fn,
                                  const StateSet& c);

// gamma = max over {V > level} of PV / V and b = max_x (PV - gamma V)^+.
struct DriftFit {
  double gamma = 0.0;
  double b = 0.0;
};
DriftFit FitGeometricDrift(const Kernel& p, const StateFn& v, double level = 0.0);
// max_x (PV - gamma V)^+.
double DriftOffset(const Kernel& p, const StateFn& v, double gamma);

// Lower bound on m(S_n 1_C) from the additive drift with constant b:
// n0 = max(1, ceil(min V over supp m)), eps = m([V <= n0]) and
// inf_{n >= 2 n0} m(S_n 1_C) >= eps / (2b).
struct OccupationBound {
  unsigned long n0 = 1;
  double eps = 0.0;
  double bound = 0.0;
  double observed_inf = 0.0;  // over 2 n0 <= n <= horizon and the limit
  bool satisfied = false;
};
OccupationBound DriftOccupationBound(const Kernel& p, const StateFn& v, double b,
                                     const StateSet& c, const Measure& m,
                                     unsigned long horizon = 256);
// Same with a function b via Cauchy-Schwarz:
// m(S_n 1_C) >= eps^2 / (4 m(1_{[V <= n0]} S_n(b^2))).
OccupationBound DriftOccupationBound(const Kernel& p, const StateFn& v, const StateFn& b_fn,
                                     const StateSet& c, const Measure& m,
                                     unsigned long horizon = 256);

// m(1_{[V <= r]} S_n(b^2)) for n0 <= n <= horizon. Finite on finite spaces;
// holds with the profile maximum reported.
Certificate CheckConditionD(const Kernel& p, const Measure& m, const StateFn& v,
                            const StateFn& b_fn, double r, unsigned long n0,
                            unsigned long horizon);
// Across a truncation family with increasing levels, the profile maxima are
// taken as bounded when the last increase is within 1% relative.
Certificate ConditionDAcrossLevels(const std::vector<double>& level_maxima);

}  // namespace ergocert

#endif  // ERGOCERT_DRIFT_HPP_
