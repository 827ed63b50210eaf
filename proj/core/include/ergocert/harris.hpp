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


// Uniform one-step bounds Pf(x) <= phi(f) + gamma(x) on a test set and the
// almost-invariance conclusions they carry over to m R; occupation of a
// compact surrogate; uniform L^p bounds on resolvents.

#ifndef ERGOCERT_HARRIS_HPP_
#define ERGOCERT_HARRIS_HPP_

#include <vector>

#include "ergocert/almost_invariance.hpp"
#include "ergocert/certificate.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/semigroup.hpp"

namespace ergocert {

// Linear case phi(f) = L m(f):
//  i)    sup_A [P(x, A) - L m(A)] <= gamma(x) on C (exact by positive parts);
//  ii.1) phi R << m R, automatic for linear phi;
//  ii.2) sup_{n0 <= n <= horizon} m(S_n(1_C (gamma - 1))) < 0, and the limit.
// When all hold, attaches the mean almost invariance certificate of m R with
// c = L m(E) and delta = sup over the admissible tail of
// m(S_{n-1}(1_C (gamma - 1))) / m(E) + 1 + 1/n.
Certificate CheckAssumptionC(const Kernel& p, const Measure& m, double L, const StateFn& gamma_fn,
                             const StateSet& c, unsigned long n0 = 1, unsigned long horizon = 256);

// i)  sup_A [P(x, A) - phi(m(A))] <= delta for x in C;
// ii) inf_{n0 <= n <= horizon} m(S_n 1_C) > 0, and the limit.
// When both hold, attaches the mean almost invariance certificate of m R
// with phi scaled by m(E) (same delta construction as CheckAssumptionC with
// gamma = delta on C). f_grid > 0 additionally reports the brute-force sup
// over non-indicator f on spaces of at most 6 states.
Certificate CheckAssumptionCPrime(const Kernel& p, const Measure& m,
                                  const AlmostInvarianceParams& params, const StateSet& c,
                                  int f_grid = 0);

struct ConditionEParams {
  AlmostInvarianceParams cprime;  // phi and delta for the one-step bound on C
  double r = 0.0;                 // sub-level for the integrability profile
  unsigned long n0 = 1;
  unsigned long horizon = 256;
};

// Generalized drift + integrability profile + one-step bound on C. When all
// hold: occupation lower bound for C from the drift, mean almost invariance
// of m R with the constructive constants, then almost invariance of m R with
// constants derived from the invariant density (attached).
Certificate CheckConditionE(const Kernel& p, const Measure& m, const StateFn& v,
                            const StateFn& b_fn, const StateSet& c,
                            const ConditionEParams& params);

// sup over t_grid of (1/t) int_0^t nu(P_s 1_K) ds compared with 1/2. When
// it exceeds 1/2, mu_hat = (nu Pi) restricted to K and m = mu_hat alpha R_alpha
// are formed and m is checked for almost invariance with c = 1 and
// delta = 1 / (2 m(E)).
Certificate CheckLasotaSzarekHalf(const Semigroup& s, const Measure& nu, const StateSet& k,
                                  const std::vector<double>& t_grid, double alpha = 1.0,
                                  int quad_steps = 64);

struct LpNorm {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};
// Norm of the nonnegative matrix T on L^p(m), m > 0 entrywise. p = 1 and
// p = inf are closed form; otherwise Boyd's nonlinear power iteration on
// D T D^{-1}, D = diag(m^{1/p}).
LpNorm LpOperatorNorm(const Matrix& t, const Vector& m, double p, int max_iter = 20000,
                      double tol = 1e-13);

// sup over the alpha grid of |alpha R_alpha|_{L^p(m)}. When bounded, attaches
// the resolvent almost invariance certificate with
// phi(t) = m(E)^{(p-1)/p} M t^{1/p} and delta = 0.
Certificate CheckUniformBoundLp(const Semigroup& s, const Measure& m, double p,
                                const std::vector<double>& alphas);

// With m = mu R_alpha: c_tilde = lim_{eps -> 0} sup_{m(A) <= eps} of the
// occupation averages of mu over the grid (and the limit). Holds iff
// c_tilde < alpha; then the index profile of m is attached.
Certificate CheckAuxIndexTransfer(const Semigroup& s, const Measure& mu, double alpha,
                                  const std::vector<double>& grid, int quad_steps = 64);

}  // namespace ergocert

#endif  // ERGOCERT_HARRIS_HPP_
