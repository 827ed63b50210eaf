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

#include "ergocert/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ergocert {

StateSpace::StateSpace(std::vector<std::string> labels) {
  if (labels.empty()) throw Error("state space must contain at least one state");
  auto data = std::make_shared<Data>();
  data->index.reserve(labels.size());
  for (StateIndex i = 0; i < labels.size(); ++i) {
    if (!data->index.emplace(labels[i], i).second) {
      throw Error("duplicate state label '" + labels[i] + "'");
    }
  }
  data->labels = std::move(labels);
  data_ = std::move(data);
}

StateSpace StateSpace::Indexed(std::size_t n, std::string_view prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return StateSpace(std::move(labels));
}

std::optional<StateIndex> StateSpace::find(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

StateIndex StateSpace::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error("unknown state '" + std::string(label) + "'");
}

bool StateSpace::operator==(const StateSpace& other) const {
  return data_ == other.data_ || data_->labels == other.data_->labels;
}

void RequireSameSpace(const StateSpace& a, const StateSpace& b, std::string_view what) {
  if (!(a == b)) throw Error("state space mismatch in " + std::string(what));
}

// ---------------------------------------------------------------------------

StateSet::StateSet(StateSpace space, std::vector<StateIndex> members)
    : space_(std::move(space)), mask_(space_.size(), false) {
  for (StateIndex i : members) {
    if (i >= space_.size()) throw Error("state set member out of range");
    mask_[i] = true;
  }
  for (StateIndex i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) members_.push_back(i);
  }
}

StateSet StateSet::Empty(StateSpace space) { return StateSet(std::move(space), {}); }

StateSet StateSet::All(StateSpace space) {
  std::vector<StateIndex> all(space.size());
  for (StateIndex i = 0; i < all.size(); ++i) all[i] = i;
  return StateSet(std::move(space), std::move(all));
}

StateSet StateSet::FromLabels(StateSpace space, const std::vector<std::string>& labels) {
  std::vector<StateIndex> members;
  members.reserve(labels.size());
  for (const auto& l : labels) members.push_back(space.index_of(l));
  return StateSet(std::move(space), std::move(members));
}

StateSet StateSet::complement() const {
  std::vector<StateIndex> rest;
  for (StateIndex i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) rest.push_back(i);
  }
  return StateSet(space_, std::move(rest));
}

bool StateSet::is_subset_of(const StateSet& other) const {
  RequireSameSpace(space_, other.space_, "StateSet::is_subset_of");
  return std::all_of(members_.begin(), members_.end(),
                     [&](StateIndex i) { return other.contains(i); });
}

// ---------------------------------------------------------------------------

Measure::Measure(StateSpace space, Vector weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (static_cast<std::size_t>(weights_.size()) != space_.size()) {
    throw Error("measure has " + std::to_string(weights_.size()) + " weights for " +
                std::to_string(space_.size()) + " states");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_(i)) || weights_(i) < 0.0) {
      throw Error("measure weight at state '" + space_.label(static_cast<StateIndex>(i)) +
                  "' is negative or not finite");
    }
  }
}

Measure Measure::Zero(StateSpace space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return Measure(std::move(space), Vector::Zero(n));
}

Measure Measure::Dirac(StateSpace space, StateIndex at) {
  if (at >= space.size()) throw Error("Dirac measure at out-of-range state");
  Vector w = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  w(static_cast<Eigen::Index>(at)) = 1.0;
  return Measure(std::move(space), std::move(w));
}

Measure Measure::Uniform(StateSpace space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return Measure(std::move(space), Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

double Measure::mass_of(const StateSet& set) const {
  RequireSameSpace(space_, set.space(), "Measure::mass_of");
  double s = 0.0;
  for (StateIndex i : set.members()) s += (*this)(i);
  return s;
}

StateSet Measure::support() const {
  std::vector<StateIndex> s;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) > 0.0) s.push_back(static_cast<StateIndex>(i));
  }
  return StateSet(space_, std::move(s));
}

bool Measure::is_probability(double tol) const { return std::abs(mass() - 1.0) <= tol; }

Measure Measure::normalized() const {
  const double total = mass();
  if (total <= 0.0) throw Error("cannot normalize a zero measure");
  return Measure(space_, weights_ / total);
}

Measure Measure::scaled(double factor) const {
  if (!(factor >= 0.0)) throw Error("measure scale factor must be nonnegative");
  return Measure(space_, weights_ * factor);
}

Measure Measure::restricted_to(const StateSet& set) const {
  RequireSameSpace(space_, set.space(), "Measure::restricted_to");
  Vector w = Vector::Zero(weights_.size());
  for (StateIndex i : set.members()) w(static_cast<Eigen::Index>(i)) = (*this)(i);
  return Measure(space_, std::move(w));
}

// ---------------------------------------------------------------------------

StateFn::StateFn(StateSpace space, Vector values, bool extended)
    : space_(std::move(space)), values_(std::move(values)), extended_(extended) {
  if (static_cast<std::size_t>(values_.size()) != space_.size()) {
    throw Error("state function has " + std::to_string(values_.size()) + " values for " +
                std::to_string(space_.size()) + " states");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double v = values_(i);
    const bool ok = std::isfinite(v) || (extended_ && v == std::numeric_limits<double>::infinity());
    if (!ok) {
      throw Error("state function value at '" + space_.label(static_cast<StateIndex>(i)) +
                  "' is not finite" + (extended_ ? " (only +inf is allowed)" : ""));
    }
  }
}

StateFn StateFn::Constant(StateSpace space, double value) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return StateFn(std::move(space), Vector::Constant(n, value));
}

StateFn StateFn::Indicator(const StateSet& set) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(set.space().size()));
  for (StateIndex i : set.members()) v(static_cast<Eigen::Index>(i)) = 1.0;
  return StateFn(set.space(), std::move(v));
}

bool StateFn::is_unit_bounded() const {
  return (values_.array() >= 0.0).all() && (values_.array() <= 1.0).all();
}

StateSet StateFn::finite_set() const {
  std::vector<StateIndex> s;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (std::isfinite(values_(i))) s.push_back(static_cast<StateIndex>(i));
  }
  return StateSet(space_, std::move(s));
}

StateSet StateFn::sublevel_set(double level) const {
  std::vector<StateIndex> s;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (values_(i) <= level) s.push_back(static_cast<StateIndex>(i));
  }
  return StateSet(space_, std::move(s));
}

// ---------------------------------------------------------------------------

std::string_view ToString(KernelKind kind) {
  switch (kind) {
    case KernelKind::kMarkovian:
      return "markovian";
    case KernelKind::kSubMarkovian:
      return "sub-markovian";
    case KernelKind::kNonnegative:
      return "nonnegative";
  }
  return "unknown";
}

KernelKind KernelKindFromString(std::string_view name) {
  if (name == "markovian") return KernelKind::kMarkovian;
  if (name == "sub-markovian") return KernelKind::kSubMarkovian;
  if (name == "nonnegative") return KernelKind::kNonnegative;
  throw Error("unknown kernel kind '" + std::string(name) + "'");
}

namespace {

KernelKind Weaker(KernelKind a, KernelKind b) {
  if (a == KernelKind::kNonnegative || b == KernelKind::kNonnegative) {
    return KernelKind::kNonnegative;
  }
  if (a == KernelKind::kSubMarkovian || b == KernelKind::kSubMarkovian) {
    return KernelKind::kSubMarkovian;
  }
  return KernelKind::kMarkovian;
}

void ClampRoundoff(Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    double& v = m.data()[i];
    if (v < 0.0 && v > -1e-12) v = 0.0;
  }
}

}  // namespace

Kernel::Kernel(StateSpace space, Matrix rows, KernelKind kind, int)
    : space_(std::move(space)), rows_(std::move(rows)), kind_(kind) {}

Kernel::Kernel(StateSpace space, Matrix rows, KernelKind kind, RowSumPolicy policy)
    : space_(std::move(space)), rows_(std::move(rows)), kind_(kind) {
  const auto n = static_cast<Eigen::Index>(space_.size());
  if (rows_.rows() != n || rows_.cols() != n) {
    throw Error("kernel matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index a = 0; a < n; ++a) {
      const double v = rows_(x, a);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "kernel entry (" << space_.label(static_cast<StateIndex>(x)) << ", "
           << space_.label(static_cast<StateIndex>(a)) << ") = " << v
           << " is negative or not finite";
        throw Error(os.str());
      }
    }
    if (kind_ == KernelKind::kNonnegative) continue;
    const double s = rows_.row(x).sum();
    const bool bad = kind_ == KernelKind::kMarkovian ? std::abs(s - 1.0) > kRowSumTolerance
                                                     : s > 1.0 + kRowSumTolerance;
    if (!bad) continue;
    if (policy == RowSumPolicy::kRenormalize && s > 0.0) {
      rows_.row(x) /= s;
      continue;
    }
    std::ostringstream os;
    os.precision(17);
    os << "row '" << space_.label(static_cast<StateIndex>(x)) << "' sums to " << s
       << (kind_ == KernelKind::kMarkovian ? ", expected 1" : ", expected <= 1");
    throw Error(os.str());
  }
}

Kernel Kernel::Identity(StateSpace space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return Kernel(std::move(space), Matrix::Identity(n, n), KernelKind::kMarkovian, 0);
}

Kernel Kernel::Derived(StateSpace space, Matrix rows, KernelKind kind) {
  const auto n = static_cast<Eigen::Index>(space.size());
  if (rows.rows() != n || rows.cols() != n) throw Error("derived kernel has wrong shape");
  if (!rows.allFinite()) throw Error("derived kernel has non-finite entries");
  ClampRoundoff(rows);
  if ((rows.array() < 0.0).any()) throw Error("derived kernel has negative entries");
  return Kernel(std::move(space), std::move(rows), kind, 0);
}

Measure Kernel::row(StateIndex x) const {
  return Measure(space_, rows_.row(static_cast<Eigen::Index>(x)).transpose());
}

// ---------------------------------------------------------------------------

StateFn Apply(const Kernel& kernel, const StateFn& f) {
  RequireSameSpace(kernel.space(), f.space(), "Apply");
  const Matrix& p = kernel.matrix();
  if (!f.extended() || f.values().allFinite()) {
    return StateFn(f.space(), p * f.values(), f.extended());
  }
  const Eigen::Index n = p.rows();
  Vector out(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    double s = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (p(x, a) > 0.0) s += p(x, a) * f.values()(a);
    }
    out(x) = s;
  }
  return StateFn(f.space(), std::move(out), true);
}

Measure Push(const Measure& m, const Kernel& kernel) {
  RequireSameSpace(m.space(), kernel.space(), "Push");
  Vector w = kernel.matrix().transpose() * m.weights();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < 0.0) w(i) = 0.0;
  }
  return Measure(m.space(), std::move(w));
}

Kernel Compose(const Kernel& first, const Kernel& second) {
  RequireSameSpace(first.space(), second.space(), "Compose");
  return Kernel::Derived(first.space(), first.matrix() * second.matrix(),
                         Weaker(first.kind(), second.kind()));
}

Kernel Power(const Kernel& kernel, unsigned long n) {
  const Eigen::Index d = kernel.matrix().rows();
  Matrix result = Matrix::Identity(d, d);
  Matrix base = kernel.matrix();
  bool first = true;
  while (n > 0) {
    if (n & 1UL) {
      result = first ? base : Matrix(result * base);
      first = false;
    }
    n >>= 1UL;
    if (n > 0) base = base * base;
  }
  return Kernel::Derived(kernel.space(), std::move(result), kernel.kind());
}

Matrix PowerSum(const Matrix& p, unsigned long n) {
  // Binary expansion of n: keep T_k = sum_{j<k} P^j and P^k, and use
  // T_{a+b} = T_a + P^a T_b.
  const Eigen::Index d = p.rows();
  Matrix sum = Matrix::Zero(d, d);
  Matrix sum_pow = Matrix::Identity(d, d);  // P^{consumed}
  Matrix block_sum = Matrix::Identity(d, d);  // T_{2^i}
  Matrix block_pow = p;                       // P^{2^i}
  while (n > 0) {
    if (n & 1UL) {
      sum += sum_pow * block_sum;
      sum_pow = sum_pow * block_pow;
    }
    n >>= 1UL;
    if (n > 0) {
      block_sum += block_pow * block_sum;
      block_pow = block_pow * block_pow;
    }
  }
  return sum;
}

Kernel Cesaro(const Kernel& kernel, unsigned long n) {
  if (n == 0) throw Error("Cesaro average needs n >= 1");
  Matrix s = PowerSum(kernel.matrix(), n) / static_cast<double>(n);
  return Kernel::Derived(kernel.space(), std::move(s), kernel.kind());
}

Kernel RestrictedAdjoint(const Kernel& kernel, const Measure& m) {
  RequireSameSpace(kernel.space(), m.space(), "Adjoint");
  const Matrix& p = kernel.matrix();
  const Eigen::Index n = p.rows();
  Matrix adj = Matrix::Zero(n, n);
  const Vector& w = m.weights();
  for (Eigen::Index a = 0; a < n; ++a) {
    if (w(a) <= 0.0) continue;
    for (Eigen::Index x = 0; x < n; ++x) adj(a, x) = w(x) * p(x, a) / w(a);
  }
  return Kernel::Derived(kernel.space(), std::move(adj), KernelKind::kNonnegative);
}

Kernel Adjoint(const Kernel& kernel, const Measure& m) {
  RequireSameSpace(kernel.space(), m.space(), "Adjoint");
  const Measure pushed = Push(m, kernel);
  for (StateIndex a = 0; a < m.size(); ++a) {
    if (pushed(a) > 0.0 && m(a) <= 0.0) {
      throw Error("auxiliary-measure support condition fails: mP charges state '" +
                  m.space().label(a) + "' which m does not");
    }
  }
  return RestrictedAdjoint(kernel, m);
}

Kernel ConvexCombination(const Kernel& first, const Kernel& second,
                         std::span<const double> weights_on_first) {
  RequireSameSpace(first.space(), second.space(), "ConvexCombination");
  if (weights_on_first.size() != first.size()) throw Error("convex weights have wrong length");
  Matrix out(first.matrix().rows(), first.matrix().cols());
  for (Eigen::Index x = 0; x < out.rows(); ++x) {
    const double w = weights_on_first[static_cast<std::size_t>(x)];
    if (!(w >= 0.0 && w <= 1.0)) throw Error("convex weight outside [0,1]");
    out.row(x) = w * first.matrix().row(x) + (1.0 - w) * second.matrix().row(x);
  }
  return Kernel::Derived(first.space(), std::move(out), Weaker(first.kind(), second.kind()));
}

double L1Distance(const Measure& a, const Measure& b) {
  RequireSameSpace(a.space(), b.space(), "L1Distance");
  return (a.weights() - b.weights()).lpNorm<1>();
}

double TotalVariation(const Measure& a, const Measure& b) { return 0.5 * L1Distance(a, b); }

double Integrate(const Measure& m, const StateFn& f) {
  RequireSameSpace(m.space(), f.space(), "Integrate");
  double s = 0.0;
  for (StateIndex i = 0; i < m.size(); ++i) {
    if (m(i) > 0.0) s += m(i) * f(i);
  }
  return s;
}

}  // namespace ergocert
