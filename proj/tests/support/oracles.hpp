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


// Reference computations for the tests. Everything here works on plain
// nested vectors and is written independently of the library, so that a bug
// in the library cannot be mirrored by its oracle.

#ifndef ERGOCERT_TESTS_SUPPORT_ORACLES_HPP_
#define ERGOCERT_TESTS_SUPPORT_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ergocert/kernel.hpp"
#include "ergocert/semigroup.hpp"

namespace ergocert::testing {

using Dense = std::vector<std::vector<double>>;
using Vec = std::vector<double>;

Dense ToDense(const Matrix& m);
Vec ToVec(const Vector& v);
Dense Identity(std::size_t n);
Dense Mul(const Dense& a, const Dense& b);
Dense Add(const Dense& a, const Dense& b, double scale_b = 1.0);
Dense Scale(const Dense& a, double s);
// Repeated multiplication, n factors.
Dense NaivePower(const Dense& a, unsigned long n);
// Gauss-Jordan with partial pivoting. Throws std::runtime_error if singular.
Dense Inverse(const Dense& a);
Vec VecMat(const Vec& v, const Dense& a);
Vec MatVec(const Dense& a, const Vec& v);
double MaxAbsDiff(const Dense& a, const Dense& b);
double L1(const Vec& a, const Vec& b);
double Sum(const Vec& v);

// Stationary law of an irreducible stochastic matrix from the balance
// equations with one equation replaced by normalization.
Vec StationaryOracle(const Dense& p);
// sum_{k < terms} 2^{-(k+1)} P^k.
Dense SeriesResolvent(const Dense& p, int terms);
// exp(t Q) by scaling and squaring of a Taylor polynomial.
Dense ExpOracle(const Dense& q, double t);
// Probability of absorption in `target` (a set of absorbing states) from
// every state, by solving the first-step equations on the other states.
Vec AbsorptionOracle(const Dense& p, const std::vector<bool>& target);

// sup_A [row(A) - phi(m(A))] over all subsets of supp(row) union supp(m),
// tabulating m(A) and row(A) over bitmasks (each mask extends the mask
// without its lowest bit).
double SubsetDp(const Vec& row, const Vec& m, const std::function<double(double)>& phi);

// sup_f (sum_a y_a f_a)^p / sum_a x_a f_a^p by gradient ascent on log f with
// backtracking, from several starts. Rows must be strictly positive.
double NumericHarnack(const Vec& x_row, const Vec& y_row, double p);

// Hand-rolled instance generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double U() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double U(double a, double b) { return a + (b - a) * U(); }
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool Coin(double p = 0.5) { return U() < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Row-stochastic, strictly positive entries with probability `density`, a
// positive diagonal, and a cyclic successor so the chain is irreducible.
Kernel RandomErgodic(Gen& g, std::size_t n, double density = 0.3);
// Dense positive random rows.
Kernel RandomPositive(Gen& g, std::size_t n);
// Cyclic class structure of the given period, irreducible.
Kernel RandomPeriodic(Gen& g, std::size_t n, int period);
// Disjoint irreducible blocks plus transient states feeding them.
struct MultiClass {
  Kernel p;
  std::vector<std::vector<StateIndex>> classes;
  std::vector<StateIndex> transient;
};
MultiClass RandomMultiClass(Gen& g, std::size_t blocks, std::size_t block_size,
                            std::size_t transient);
// Rate matrix with random positive off-diagonal rates (density), irreducible.
Generator RandomGenerator(Gen& g, std::size_t n, double density = 0.5);
Measure RandomMeasure(Gen& g, const StateSpace& space, bool probability = true);
// Random vector with entries in [0, 1].
StateFn RandomUnitFn(Gen& g, const StateSpace& space);

}  // namespace ergocert::testing

#endif  // ERGOCERT_TESTS_SUPPORT_ORACLES_HPP_
