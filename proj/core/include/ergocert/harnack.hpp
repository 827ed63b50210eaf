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


// Sharp Harnack constants between kernel rows, the Harnack-Lyapunov
// certification pipeline and the perturbed kernels rho P + (1 - rho) Q.

#ifndef ERGOCERT_HARNACK_HPP_
#define ERGOCERT_HARNACK_HPP_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ergocert/certificate.hpp"
#include "ergocert/kernel.hpp"

namespace ergocert {

struct HarnackConstant {
  double p = 2.0;
  StateIndex x = 0;  // the side carrying P(f^p)
  StateIndex y = 0;  // the side carrying (Pf)^p
  double value = 1.0;  // +inf when supp P(y, .) is not inside supp P(x, .)
  bool finite() const { return value < std::numeric_limits<double>::infinity(); }
};

// Smallest M with (Pf(y))^p <= M P(f^p)(x) for all f >= 0:
// M = (sum_a P(y,a)^{p/(p-1)} P(x,a)^{-1/(p-1)})^{p-1}, 0/0 terms dropped.
HarnackConstant ComputeHarnackConstant(const Kernel& p, StateIndex x, StateIndex y, double exponent);

// f(a) = (P(y,a) / P(x,a))^{1/(p-1)} on supp P(x, .), the Hoelder equality
// case.
Vector HarnackMaximizer(const Kernel& p, StateIndex x, StateIndex y, double exponent);

// (Pf(y))^p / P(f^p)(x) for a given f >= 0.
double HarnackRatio(const Kernel& p, StateIndex x, StateIndex y, double exponent, const Vector& f);

// PV <= gamma V + c and M* = max_{x in C} M(z0 -> x) finite.
Certificate CheckHarnackLyapunov(const Kernel& p, const StateFn& v, double gamma, double c,
                                 const StateSet& set, StateIndex z0, double exponent);

// The state of C minimizing V (lowest index on ties).
StateIndex DefaultReference(const StateFn& v, const StateSet& c);

// m = delta_{z0} P, phi(t) = (M* t)^{1/p}, delta = 0, then the one-step
// bound check on C and the adjoint solver on m R; the invariant law found is
// compared with the spectral one when the chain has a single class.
Certificate CertifyHarnackPipeline(const Kernel& p, const StateFn& v, double gamma, double c,
                                   const StateSet& set, StateIndex z0, double exponent);

struct PerturbationSpec {
  StateFn rho;  // 0 < a <= rho <= b <= 1
  Kernel q;
  double a() const;
  double b() const;
};

// Row x: rho(x) P(x, .) + (1 - rho(x)) Q(x, .).
Kernel Perturb(const Kernel& p, const PerturbationSpec& spec);

struct PerturbedHarnackParams {
  double gamma = 0.5;  // PV <= gamma V + c
  double c = 1.0;
  double l = 1.0;      // QV <= l V + eta
  double eta = 0.0;
  double r = 0.0;      // C = [V <= r]
  double exponent = 2.0;
  std::optional<StateIndex> z0;
};

// Threshold l < (1 - b gamma) / (1 - a), QV <= lV + eta, the composite
// drift of the perturbed kernel, then the one-step bound on C with
// m = delta_{z0} Pbar, phi(t) = b (M t / a)^{1/p}, delta = 1 - a, and the
// solver on m R.
Certificate CertifyPerturbedHarnack(const Kernel& p, const StateFn& v,
                                    const PerturbationSpec& spec,
                                    const PerturbedHarnackParams& params);

// Atom structure of the lazy kernel P^rho = rho P + (1 - rho) I.
struct LazyAtomsReport {
  unsigned long max_power = 64;
  // max over y, n of |(P^rho)^n(y, y) - (1 - rho(y))^n| restricted to atoms
  // whose column of P is zero (where the closed form is exact).
  double closed_form_error = 0.0;
  std::size_t exact_atoms = 0;
  // min over y, n of (P^rho)^n(y, y) - (1 - rho(y))^n, always >= 0.
  double diagonal_slack = 0.0;
  // sup_{x in C} P^rho(x, A_k) for A_k = C minus its k lowest-V states.
  std::vector<double> tail_sups;
  double one_minus_b = 0.0;
  double max_atom = 0.0;  // max_{x, y} P(x, y); 0 would be the non-atomic case
  std::string notes;
};
LazyAtomsReport DiagnoseLazyAtoms(const Kernel& p, const StateFn& rho, const StateSet& c,
                                  const StateFn& v, unsigned long max_power = 64);

}  // namespace ergocert

#endif  // ERGOCERT_HARNACK_HPP_
