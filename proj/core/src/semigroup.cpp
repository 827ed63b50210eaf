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


#include "ergocert/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ergocert {

Generator::Generator(StateSpace space, Matrix rates, std::optional<double> lambda)
    : space_(std::move(space)), rates_(std::move(rates)) {
  const auto n = static_cast<Eigen::Index>(space_.size());
  if (rates_.rows() != n || rates_.cols() != n) {
    throw Error("generator matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!rates_.allFinite()) throw Error("generator has non-finite rates");
  double max_diag = 0.0;
  const double scale = std::max(1.0, rates_.cwiseAbs().maxCoeff());
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index a = 0; a < n; ++a) {
      if (a != x && rates_(x, a) < 0.0) {
        throw Error("negative off-diagonal rate at (" + space_.label(static_cast<StateIndex>(x)) +
                    ", " + space_.label(static_cast<StateIndex>(a)) + ")");
      }
    }
    const double s = rates_.row(x).sum();
    if (std::abs(s) > kRowSumTolerance * scale) {
      std::ostringstream os;
      os << "generator row '" << space_.label(static_cast<StateIndex>(x)) << "' sums to " << s;
      throw Error(os.str());
    }
    max_diag = std::max(max_diag, std::abs(rates_(x, x)));
  }
  if (lambda) {
    if (!(*lambda >= max_diag) || !(*lambda > 0.0)) {
      throw Error("uniformization rate must be positive and at least max |Q(x,x)|");
    }
    lambda_ = *lambda;
  } else {
    lambda_ = max_diag > 0.0 ? 1.05 * max_diag : 1.0;
  }
}

Kernel Generator::Uniformized() const {
  const auto n = static_cast<Eigen::Index>(size());
  Matrix p = Matrix::Identity(n, n) + rates_ / lambda_;
  return Kernel::Derived(space_, std::move(p), KernelKind::kMarkovian);
}

Semigroup Semigroup::Discrete(Kernel kernel) { return Semigroup(std::move(kernel)); }
Semigroup Semigroup::Continuous(Generator generator) { return Semigroup(std::move(generator)); }

const StateSpace& Semigroup::space() const {
  return is_discrete() ? kernel().space() : generator().space();
}

const Kernel& Semigroup::kernel() const {
  if (!is_discrete()) throw Error("semigroup is continuous; no one-step kernel");
  return std::get<Kernel>(impl_);
}

const Generator& Semigroup::generator() const {
  if (is_discrete()) throw Error("semigroup is discrete; no generator");
  return std::get<Generator>(impl_);
}

Kernel Semigroup::Skeleton() const {
  return is_discrete() ? kernel() : generator().Uniformized();
}

namespace {

// e^{-mu} sum_j mu^j / j! P^j, rows rescaled by the retained Poisson mass.
Matrix PoissonSeries(const Matrix& p, double mu) {
  const Eigen::Index n = p.rows();
  double w = std::exp(-mu);
  double cum = w;
  Matrix power = Matrix::Identity(n, n);
  Matrix sum = w * power;
  for (int j = 1; 1.0 - cum > kPoissonTail && j < 10000; ++j) {
    w *= mu / j;
    power = power * p;
    sum += w * power;
    cum += w;
  }
  return sum / cum;
}

}  // namespace

Kernel TransitionAt(const Semigroup& s, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error("time must be a finite nonnegative number");
  if (s.is_discrete()) {
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-12) throw Error("discrete semigroup needs an integer time");
    return Power(s.kernel(), static_cast<unsigned long>(r));
  }
  const Generator& g = s.generator();
  if (t == 0.0) return Kernel::Identity(g.space());
  const Matrix pl = g.Uniformized().matrix();
  double mu = g.lambda() * t;
  int squarings = 0;
  while (mu > 8.0) {
    mu *= 0.5;
    ++squarings;
  }
  Matrix out = PoissonSeries(pl, mu);
  for (int i = 0; i < squarings; ++i) out = out * out;
  return Kernel::Derived(g.space(), std::move(out), KernelKind::kMarkovian);
}

Kernel DiscreteResolvent(const Kernel& p) {
  const Eigen::Index n = p.matrix().rows();
  Matrix a = Matrix::Identity(n, n) - 0.5 * p.matrix();
  Matrix r = 0.5 * Eigen::PartialPivLU<Matrix>(a).inverse();
  const KernelKind kind =
      p.kind() == KernelKind::kNonnegative ? KernelKind::kNonnegative : p.kind();
  return Kernel::Derived(p.space(), std::move(r), kind);
}

Resolvent ResolventOf(const Semigroup& s, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("resolvent parameter must be positive");
  const auto n = static_cast<Eigen::Index>(s.space().size());
  if (s.is_discrete()) {
    const double q = std::exp(-alpha);
    Matrix a = Matrix::Identity(n, n) - q * s.kernel().matrix();
    Matrix scaled = (1.0 - q) * Eigen::PartialPivLU<Matrix>(a).inverse();
    Matrix raw = scaled / alpha;
    return {alpha, Kernel::Derived(s.space(), std::move(scaled), s.kernel().kind()),
            Kernel::Derived(s.space(), std::move(raw), KernelKind::kNonnegative)};
  }
  Matrix a = alpha * Matrix::Identity(n, n) - s.generator().rates();
  Eigen::PartialPivLU<Matrix> lu(a);
  Matrix raw = lu.inverse();
  if (!raw.allFinite()) throw Error("resolvent system is singular");
  Matrix scaled = alpha * raw;
  return {alpha, Kernel::Derived(s.space(), std::move(scaled), KernelKind::kMarkovian),
          Kernel::Derived(s.space(), std::move(raw), KernelKind::kNonnegative)};
}

namespace {

void RequireProbability(const Measure& mu) {
  if (!mu.is_probability(1e-12)) {
    throw Error("initial measure must be a probability (mass " + std::to_string(mu.mass()) + ")");
  }
}

bool SupportClosed(const Vector& w, const Matrix& p) {
  const Eigen::Index n = p.rows();
  for (Eigen::Index x = 0; x < n; ++x) {
    if (w(x) <= 0.0) continue;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (p(x, a) > 0.0 && w(a) <= 0.0) return false;
    }
  }
  return true;
}

// The direct solve can lose atoms whose true mass is below round-off. The
// fixed-point map w -> (source + rate w skel) / (rate + shift) is a
// contraction with the same solution that charges every atom reachable from
// the current support, so a few sweeps restore the structural support
// without disturbing the accurate entries.
Vector RepairSupport(Vector w, const Vector& source, const Matrix& skel, double rate,
                     double denom) {
  w = w.cwiseMax(0.0);
  const Eigen::Index n = skel.rows();
  for (Eigen::Index it = 0; it < n + 64 && !SupportClosed(w, skel); ++it) {
    Vector next = (source + rate * (skel.transpose() * w)) / denom;
    w = next.cwiseMax(0.0);
  }
  return w;
}

}  // namespace

Measure AuxiliaryMeasure(const Kernel& p, const Measure& mu, bool normalize) {
  RequireSameSpace(p.space(), mu.space(), "AuxiliaryMeasure");
  RequireProbability(mu);
  const Kernel r = DiscreteResolvent(p);
  Vector w = Push(mu, r).weights();
  // m = mu/2 + m P / 2
  w = RepairSupport(std::move(w), 0.5 * mu.weights(), p.matrix(), 0.5, 1.0);
  if (!SupportClosed(w, p.matrix())) throw Error("auxiliary measure lost support numerically");
  Measure m(p.space(), std::move(w));
  return normalize ? m.normalized() : m;
}

Measure AuxiliaryMeasure(const Semigroup& s, const Measure& mu, double alpha, bool normalize) {
  if (s.is_discrete()) return AuxiliaryMeasure(s.kernel(), mu, normalize);
  RequireSameSpace(s.space(), mu.space(), "AuxiliaryMeasure");
  RequireProbability(mu);
  const Resolvent r = ResolventOf(s, alpha);
  Vector w = Push(mu, r.raw).weights();
  const Generator& g = s.generator();
  const Kernel skel = g.Uniformized();
  // m (alpha + lambda) = mu + lambda m P_lambda
  w = RepairSupport(std::move(w), mu.weights(), skel.matrix(), g.lambda(), alpha + g.lambda());
  if (!SupportClosed(w, skel.matrix())) throw Error("auxiliary measure lost support numerically");
  Measure m(s.space(), std::move(w));
  return normalize ? m.normalized() : m;
}

int PanelCount(double t, int quad_steps) {
  if (quad_steps < 1) throw Error("quadrature needs at least one step per unit time");
  return std::max(1, static_cast<int>(std::ceil(quad_steps * t - 1e-9)));
}

namespace {

// int_0^t mu P_s ds by composite Simpson.
Vector OccupationIntegral(const Semigroup& s, const Vector& mu, double t, int quad_steps) {
  const int panels = PanelCount(t, quad_steps);
  const double h = t / (2.0 * panels);
  const Matrix ph_t = TransitionAt(s, h).matrix().transpose();
  Vector v = mu;
  Vector acc = v;
  for (int j = 1; j <= 2 * panels; ++j) {
    v = ph_t * v;
    const double w = j == 2 * panels ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    acc += w * v;
  }
  return acc * (h / 3.0);
}

}  // namespace

StateFn OccupationDensity(const Semigroup& s, const Measure& m, double t, int quad_steps) {
  RequireSameSpace(s.space(), m.space(), "OccupationDensity");
  if (s.is_discrete()) {
    throw Error("occupation densities are defined for continuous semigroups; use partial sums "
                "of the adjoint powers for discrete chains");
  }
  if (!(t > 0.0)) throw Error("occupation time must be positive");
  if (m.support().size() != m.size()) throw Error("occupation density needs m with full support");
  Vector integral = OccupationIntegral(s, m.weights(), t, quad_steps);
  return StateFn(m.space(), integral.cwiseQuotient(m.weights()));
}

Measure KbMeasure(const Semigroup& s, const Measure& mu, double t, int quad_steps) {
  RequireSameSpace(s.space(), mu.space(), "KbMeasure");
  if (!(t > 0.0)) throw Error("averaging time must be positive");
  if (s.is_discrete()) {
    const auto n = static_cast<unsigned long>(std::max(1.0, std::round(t)));
    const Matrix pt = s.kernel().matrix().transpose();
    Vector v = mu.weights();
    Vector acc = v;
    for (unsigned long k = 1; k < n; ++k) {
      v = pt * v;
      acc += v;
    }
    return Measure(mu.space(), (acc / static_cast<double>(n)).cwiseMax(0.0));
  }
  Vector integral = OccupationIntegral(s, mu.weights(), t, quad_steps);
  return Measure(mu.space(), (integral / t).cwiseMax(0.0));
}

std::vector<Vector> OccupationSweep(const Semigroup& s, const Measure& mu, double t_min,
                                    int count, int quad_steps) {
  RequireSameSpace(s.space(), mu.space(), "OccupationSweep");
  if (!(t_min > 0.0) || count < 1) throw Error("occupation sweep needs t_min > 0 and count >= 1");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  if (s.is_discrete()) {
    const Matrix pt = s.kernel().matrix().transpose();
    Vector v = mu.weights();
    Vector acc = v;
    unsigned long n = 1;
    for (int k = 0; k < count; ++k) {
      const auto target =
          static_cast<unsigned long>(std::max(1.0, std::round(t_min * std::ldexp(1.0, k))));
      while (n < target) {
        v = pt * v;
        acc += v;
        ++n;
      }
      out.push_back((acc / static_cast<double>(n)).cwiseMax(0.0));
    }
    return out;
  }
  const int panels = PanelCount(t_min, quad_steps);
  const double h = t_min / (2.0 * panels);
  const Matrix ph_t = TransitionAt(s, h).matrix().transpose();
  Vector v = mu.weights();
  Vector integral = Vector::Zero(v.size());
  long long pairs_done = 0;
  for (int k = 0; k < count; ++k) {
    const long long target = static_cast<long long>(panels) << k;
    while (pairs_done < target) {
      Vector v1 = ph_t * v;
      Vector v2 = ph_t * v1;
      integral += (h / 3.0) * (v + 4.0 * v1 + v2);
      v = std::move(v2);
      ++pairs_done;
    }
    out.push_back((integral / (t_min * std::ldexp(1.0, k))).cwiseMax(0.0));
  }
  return out;
}

}  // namespace ergocert
