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


// Continuous-time chains given by a rate matrix, the discrete/continuous
// semigroup wrapper, resolvents, auxiliary measures and occupation averages.

#ifndef ERGOCERT_SEMIGROUP_HPP_
#define ERGOCERT_SEMIGROUP_HPP_

#include <optional>
#include <variant>

#include "ergocert/kernel.hpp"

namespace ergocert {

class Generator {
 public:
  // Off-diagonal rates must be >= 0 and rows must sum to 0 within
  // kRowSumTolerance (scaled by the largest rate). When lambda is omitted it
  // defaults to 1.05 * max |Q(x,x)|, or 1 for the zero generator.
  Generator(StateSpace space, Matrix rates, std::optional<double> lambda = std::nullopt);

  const StateSpace& space() const { return space_; }
  const Matrix& rates() const { return rates_; }
  double lambda() const { return lambda_; }
  std::size_t size() const { return space_.size(); }

  // P_lambda = I + Q / lambda.
  Kernel Uniformized() const;

 private:
  StateSpace space_;
  Matrix rates_;
  double lambda_;
};

class Semigroup {
 public:
  static Semigroup Discrete(Kernel kernel);
  static Semigroup Continuous(Generator generator);

  bool is_discrete() const { return std::holds_alternative<Kernel>(impl_); }
  const StateSpace& space() const;
  // Throws when the variant does not match.
  const Kernel& kernel() const;
  const Generator& generator() const;

  // One-step kernel carrying the support structure: P itself, or P_lambda.
  Kernel Skeleton() const;

 private:
  explicit Semigroup(std::variant<Kernel, Generator> impl) : impl_(std::move(impl)) {}
  std::variant<Kernel, Generator> impl_;
};

// Poisson tail mass at which the uniformization series is cut.
inline constexpr double kPoissonTail = 1e-14;

// P_t. Discrete semigroups need an integer t.
Kernel TransitionAt(const Semigroup& s, double t);

struct Resolvent {
  double alpha;
  Kernel scaled;  // alpha R_alpha, markovian
  Kernel raw;     // R_alpha
};

// Continuous: R_alpha = (alpha I - Q)^{-1}. Discrete: the geometric
// resolvent alpha R_alpha = (1 - e^{-alpha}) (I - e^{-alpha} P)^{-1}, which
// equals DiscreteResolvent(P) at alpha = ln 2.
Resolvent ResolventOf(const Semigroup& s, double alpha);

// R = sum_n 2^{-(n+1)} P^n = 1/2 (I - P/2)^{-1}.
Kernel DiscreteResolvent(const Kernel& p);

// m = mu R_alpha (continuous, mass 1/alpha) or mu R (discrete, mass 1).
// mu must be a probability. Throws if the resulting m fails the support
// condition, which would indicate a numerical fault.
Measure AuxiliaryMeasure(const Semigroup& s, const Measure& mu, double alpha,
                         bool normalize = false);
Measure AuxiliaryMeasure(const Kernel& p, const Measure& mu, bool normalize = false);

// Number of Simpson panels used on [0, t] when quad_steps is given per unit
// time.
int PanelCount(double t, int quad_steps);

// phi_t(a) = (1/m(a)) int_0^t (m P_s)(a) ds, the density of the occupation
// measure with respect to m. Continuous semigroups only; m needs full support.
// quad_steps is the number of Simpson panels per unit time.
StateFn OccupationDensity(const Semigroup& s, const Measure& m, double t, int quad_steps = 64);

// (1/t) int_0^t mu P_s ds. For discrete semigroups t is rounded to an integer
// n >= 1 and the result is mu S_n.
Measure KbMeasure(const Semigroup& s, const Measure& mu, double t, int quad_steps = 64);

// (1/t_k) int_0^{t_k} mu P_s ds at each time of a geometric grid t_k =
// t_min 2^k, k = 0..count-1, from a single Simpson pass.
std::vector<Vector> OccupationSweep(const Semigroup& s, const Measure& mu, double t_min,
                                    int count, int quad_steps = 64);

}  // namespace ergocert

#endif  // ERGOCERT_SEMIGROUP_HPP_
