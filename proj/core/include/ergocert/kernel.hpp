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

// State spaces, measures, functions and kernels over a finite set of labelled
// states. Everything here is immutable after construction.

#ifndef ERGOCERT_KERNEL_HPP_
#define ERGOCERT_KERNEL_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace ergocert {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using StateIndex = std::size_t;

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row-sum tolerance applied when a kernel is built from external data.
inline constexpr double kRowSumTolerance = 1e-12;

class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);

  // States named prefix0, prefix1, ...
  static StateSpace Indexed(std::size_t n, std::string_view prefix = "s");

  std::size_t size() const { return data_->labels.size(); }
  const std::string& label(StateIndex i) const { return data_->labels.at(i); }
  const std::vector<std::string>& labels() const { return data_->labels; }

  std::optional<StateIndex> find(std::string_view label) const;
  // Throws Error when the label is unknown.
  StateIndex index_of(std::string_view label) const;

  bool operator==(const StateSpace& other) const;

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, StateIndex> index;
  };
  std::shared_ptr<const Data> data_;
};

// Throws Error naming `what` when the two spaces differ.
void RequireSameSpace(const StateSpace& a, const StateSpace& b, std::string_view what);

class StateSet {
 public:
  StateSet(StateSpace space, std::vector<StateIndex> members);

  static StateSet Empty(StateSpace space);
  static StateSet All(StateSpace space);
  static StateSet FromLabels(StateSpace space, const std::vector<std::string>& labels);

  const StateSpace& space() const { return space_; }
  // Sorted, unique.
  const std::vector<StateIndex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(StateIndex i) const { return mask_.at(i); }
  const std::vector<bool>& mask() const { return mask_; }

  StateSet complement() const;
  bool is_subset_of(const StateSet& other) const;

 private:
  StateSpace space_;
  std::vector<StateIndex> members_;
  std::vector<bool> mask_;
};

class Measure {
 public:
  // Weights must be finite and nonnegative.
  Measure(StateSpace space, Vector weights);

  static Measure Zero(StateSpace space);
  static Measure Dirac(StateSpace space, StateIndex at);
  static Measure Uniform(StateSpace space);

  const StateSpace& space() const { return space_; }
  const Vector& weights() const { return weights_; }
  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  double operator()(StateIndex i) const { return weights_(static_cast<Eigen::Index>(i)); }

  double mass() const { return weights_.sum(); }
  double mass_of(const StateSet& set) const;
  StateSet support() const;
  bool is_probability(double tol = 1e-12) const;
  Measure normalized() const;
  Measure scaled(double factor) const;
  Measure restricted_to(const StateSet& set) const;

 private:
  StateSpace space_;
  Vector weights_;
};

// A real function on states. `extended` functions may take the value +inf
// (Lyapunov functions that are infinite off an absorbing set); NaN is never
// accepted.
class StateFn {
 public:
  StateFn(StateSpace space, Vector values, bool extended = false);

  static StateFn Constant(StateSpace space, double value);
  static StateFn Indicator(const StateSet& set);

  const StateSpace& space() const { return space_; }
  const Vector& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator()(StateIndex i) const { return values_(static_cast<Eigen::Index>(i)); }
  bool extended() const { return extended_; }

  bool is_unit_bounded() const;  // 0 <= f <= 1
  StateSet finite_set() const;
  // {x : f(x) <= level}
  StateSet sublevel_set(double level) const;

 private:
  StateSpace space_;
  Vector values_;
  bool extended_;
};

enum class KernelKind { kMarkovian, kSubMarkovian, kNonnegative };
enum class RowSumPolicy { kReject, kRenormalize };

std::string_view ToString(KernelKind kind);
KernelKind KernelKindFromString(std::string_view name);

class Kernel {
 public:
  // Validates entries and row sums against kRowSumTolerance. Under
  // kRenormalize, markovian rows are rescaled to sum 1 and sub-markovian rows
  // exceeding 1 are rescaled down; negative entries are always rejected.
  Kernel(StateSpace space, Matrix rows, KernelKind kind = KernelKind::kMarkovian,
         RowSumPolicy policy = RowSumPolicy::kReject);

  static Kernel Identity(StateSpace space);

  // For kernels produced by exact algebra on already-validated kernels. Only
  // checks shape and finiteness; tiny negative round-off is clamped to zero.
  static Kernel Derived(StateSpace space, Matrix rows, KernelKind kind);

  const StateSpace& space() const { return space_; }
  const Matrix& matrix() const { return rows_; }
  KernelKind kind() const { return kind_; }
  std::size_t size() const { return space_.size(); }
  double operator()(StateIndex x, StateIndex a) const {
    return rows_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a));
  }

  Measure row(StateIndex x) const;
  Vector row_sums() const { return rows_.rowwise().sum(); }
  bool is_markovian() const { return kind_ == KernelKind::kMarkovian; }

 private:
  Kernel(StateSpace space, Matrix rows, KernelKind kind, int /*trusted*/);

  StateSpace space_;
  Matrix rows_;
  KernelKind kind_;
};

// (Pf)(x) = sum_a P(x,a) f(a), with 0 * inf = 0 for extended f.
StateFn Apply(const Kernel& kernel, const StateFn& f);
// (mP)(a) = sum_x m(x) P(x,a).
Measure Push(const Measure& m, const Kernel& kernel);
// Matrix product, kind is the weaker of the two.
Kernel Compose(const Kernel& first, const Kernel& second);
// Exponentiation by squaring; power 0 is the identity.
Kernel Power(const Kernel& kernel, unsigned long n);
// S_n = (1/n) sum_{k<n} P^k, computed in O(log n) products.
Kernel Cesaro(const Kernel& kernel, unsigned long n);
// sum_{k<n} P^k as a raw matrix.
Matrix PowerSum(const Matrix& p, unsigned long n);

// The m-adjoint: P*(a,x) = m(x) P(x,a) / m(a) on supp(m), zero rows off the
// support. Throws Error naming the offending state when supp(mP) is not
// contained in supp(m).
Kernel Adjoint(const Kernel& kernel, const Measure& m);
// Same formula without the support check; mass that leaves supp(m) is lost.
Kernel RestrictedAdjoint(const Kernel& kernel, const Measure& m);

// lambda * first + (1 - lambda) * second, rowwise with per-state weights.
Kernel ConvexCombination(const Kernel& first, const Kernel& second,
                         std::span<const double> weights_on_first);

double L1Distance(const Measure& a, const Measure& b);
// Half the L1 distance.
double TotalVariation(const Measure& a, const Measure& b);
// m(f) = sum m(x) f(x), 0 * inf = 0.
double Integrate(const Measure& m, const StateFn& f);

}  // namespace ergocert

#endif  // ERGOCERT_KERNEL_HPP_
