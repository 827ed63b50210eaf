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


// Invariant measures: per-class linear solves, the constructive adjoint
// Cesaro density, generator null spaces, and the class count bound.

#ifndef ERGOCERT_SOLVER_HPP_
#define ERGOCERT_SOLVER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "ergocert/certificate.hpp"
#include "ergocert/ergodic.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/phi.hpp"
#include "ergocert/semigroup.hpp"

namespace ergocert {

enum class SolveMethod { kEigen, kCesaroAdjoint, kGeneratorNullspace };
std::string_view ToString(SolveMethod method);

struct InvariantResult {
  StateFn rho;
  Measure nu;
  double residual = 0.0;  // |nu P - nu|_1
  SolveMethod method = SolveMethod::kEigen;
  int iterations = 0;
  bool converged = true;
  // Adjoint solver diagnostics.
  double subinvariance_gap = 0.0;  // m((P* rho - rho)^+)
  double mass_gap = 0.0;           // |m(P* rho) - m(rho)|
  std::vector<double> trajectory;  // L1(m) change between extrapolations
  std::vector<double> norms;       // m(f_n) along the doubling horizons
  std::string notes;

  bool is_zero() const { return nu.mass() == 0.0; }
};

// One invariant probability per closed class.
std::vector<InvariantResult> SolveEigen(const Kernel& p);

// rho = lim S_n^* 1 for the m-adjoint, nu = rho m. Horizons double from a
// multiple of the common class period and successive averages are combined
// by Richardson extrapolation 2 f_{2n} - f_n, which removes the 1/n term.
// Stops when successive extrapolations differ by <= tol m(E) in L1(m).
// Atoms of nu below 1e-3 tol m(E) are dropped as round-off. A zero nu is a
// valid outcome (no invariant measure below m).
InvariantResult SolveCesaroAdjoint(const Kernel& p, const Measure& m, double tol = 1e-10,
                                   unsigned long max_n = 1UL << 40);

// mQ = 0 per closed class of Q, each cross-checked as a fixed point of
// alpha R_alpha for alpha in {1/2, 1, 2}; the largest such deviation is
// reported as the residual.
std::vector<InvariantResult> SolveContinuous(const Semigroup& s);

// Checks the one-step bound on the whole space, then that the number of
// closed classes is at most m(E) / phi^{-1}(1 - delta) and that every class
// has m(A) >= phi^{-1}(1 - delta).
Certificate VerifyCountBound(const Kernel& p, const Measure& m, const Phi& phi, double delta);

}  // namespace ergocert

#endif  // ERGOCERT_SOLVER_HPP_
