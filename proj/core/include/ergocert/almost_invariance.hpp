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


// Almost invariance m(P^n 1_A) <= phi(m(A)) + delta m(E), its Cesaro and
// resolvent variants, the support condition on m, and partial
// sub-invariance.

#ifndef ERGOCERT_ALMOST_INVARIANCE_HPP_
#define ERGOCERT_ALMOST_INVARIANCE_HPP_

#include <vector>

#include "ergocert/certificate.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/phi.hpp"
#include "ergocert/semigroup.hpp"

namespace ergocert {

struct AlmostInvarianceParams {
  Phi phi = Phi::Linear(1.0);
  double delta = 0.0;
  unsigned long horizon = 256;
  unsigned long n0 = 1;
  // Also test the n -> infinity Cesaro limit (markovian kernels only). This
  // turns bounded-horizon verdicts into exact ones on finite spaces.
  bool include_limit = true;
};

// supp(m P) within supp(m). For continuous semigroups the test runs on the
// uniformized kernel, which has the same support graph as alpha R_alpha.
Certificate CheckAuxSupport(const Kernel& p, const Measure& m);
Certificate CheckAuxSupport(const Semigroup& s, const Measure& m);

// m P^n for n = 1..horizon.
std::vector<Vector> PowerSweep(const Kernel& p, const Measure& m, unsigned long horizon);
// m S_n for n = 1..horizon.
std::vector<Vector> CesaroSweep(const Kernel& p, const Measure& m, unsigned long horizon);

// Worst violation over n = 1..horizon (plus the limit) of the almost
// invariance inequality. Reports delta_min, the smallest delta that works
// with the given phi.
Certificate CheckAlmostInvariant(const Kernel& p, const Measure& m,
                                 const AlmostInvarianceParams& params);
// Same with S_n, n0 <= n <= horizon. Also reports the sub-markovian mass
// average (1/n) sum_k m(P^k 1) at the horizon.
Certificate CheckMeanAlmostInvariant(const Kernel& p, const Measure& m,
                                     const AlmostInvarianceParams& params);

// Best linear constants. delta_inf = sup_n (m P^n)(Z) / m(E) over the
// m-null atoms Z (no finite c can do better), attained with
// c = max over n and supp(m) of (m P^n)(a) / m(a). Holds iff delta_inf < 1.
Certificate OptimalAlmostInvariance(const Kernel& p, const Measure& m, unsigned long horizon = 256);
Certificate OptimalMeanAlmostInvariance(const Kernel& p, const Measure& m,
                                        unsigned long horizon = 256, unsigned long n0 = 1);

// m alpha R_alpha(A) <= phi(m(A)) + delta m(E) over the alpha grid and the
// alpha -> 0 limit; also attaches the index of (m alpha R_alpha) over the
// grid.
Certificate CheckResolventAlmostInvariant(const Semigroup& s, const Measure& m,
                                          const AlmostInvarianceParams& params,
                                          const std::vector<double>& alphas);

// Greedy search for A with m(A) > 0 and sum_{x in A} m(x) P^n(x, b) <= m(b)
// for all b and n = 1..horizon. On success attaches the almost invariance
// certificate with phi = m and delta = (m(E) - m(A)) / m(E).
Certificate CheckPartialSubinvariance(const Kernel& p, const Measure& m, unsigned long horizon = 64);

// Almost invariance constants obtained from an invariant nu = rho m:
// gamma = m((1 - rho)^+) / m(E) after scaling nu to mass m(E),
// delta = (1 + gamma) / 2 and c chosen so that m(rho 1_{rho > c}) <= (1 -
// gamma) / 2 m(E). Then m(P^n 1_A) <= c m(A) + delta m(E) for all n.
struct DensityConstants {
  double c = 0.0;
  double delta = 1.0;
  double gamma = 1.0;
};
DensityConstants AlmostInvarianceFromDensity(const Measure& m, const Measure& nu);

}  // namespace ergocert

#endif  // ERGOCERT_ALMOST_INVARIANCE_HPP_
