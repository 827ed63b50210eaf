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


// Weighted-norm convergence of P^n to its invariant law and Cesaro limits.

#ifndef ERGOCERT_CONVERGENCE_HPP_
#define ERGOCERT_CONVERGENCE_HPP_

#include <string>
#include <vector>

#include "ergocert/kernel.hpp"

namespace ergocert {

// max_x (1 + V(x))^{-1} sum_a |P^n(x,a) - m(a)| (1 + V(a)), the norm of
// f -> P^n f - m(f) in the weighted sup norm |f / (1 + V)|_inf. Throws when
// m is not invariant (residual > 1e-10).
double WeightedGapNorm(const Kernel& p, const Measure& m, const StateFn& v, unsigned long n);

struct DecayReport {
  std::vector<unsigned long> ns;
  std::vector<double> norms;
  double fitted_gamma = 1.0;
  double fitted_c = 0.0;
  double envelope_c = 0.0;  // max_n norms[n] / gamma^n
  double r2 = 0.0;
  std::size_t fit_points = 0;
  bool geometric = false;
  bool exact_convergence = false;  // norms vanish from some n on
  std::string notes;
};

// Norms beyond this are treated as converged and excluded from the fit.
inline constexpr double kDecayFloor = 1e-10;
inline constexpr double kDecayR2 = 0.95;

std::vector<unsigned long> DefaultDecayGrid();  // 1..256
DecayReport ComputeDecayReport(const Kernel& p, const Measure& m, const StateFn& v,
                               const std::vector<unsigned long>& ns);

struct CesaroCheck {
  Measure average;    // (1/N) sum_{k=1}^N P^k(x, .)
  Measure predicted;  // delta_x Pi
  double residual = 0.0;  // total variation
};
CesaroCheck CesaroLimitCheck(const Kernel& p, StateIndex x, unsigned long n);

}  // namespace ergocert

#endif  // ERGOCERT_CONVERGENCE_HPP_
