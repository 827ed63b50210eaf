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


// The vanishing-mass index: for each eps the worst Cesaro occupation
// sup_{m(A) <= eps} max_n (m S_n)(A), computed exactly as a 0/1 knapsack and
// bounded above by its fractional relaxation.

#ifndef ERGOCERT_INDEX_PROFILE_HPP_
#define ERGOCERT_INDEX_PROFILE_HPP_

#include <vector>

#include "ergocert/certificate.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/semigroup.hpp"

namespace ergocert {

enum class IndexMethod { kExact, kFractional, kBoth };

struct IndexProfile {
  std::vector<double> epsilons;  // decreasing
  std::vector<double> crisp;
  std::vector<double> fractional;
  std::vector<long long> crisp_n;  // horizon achieving crisp, 0 for the limit
  unsigned long horizon = 0;
  double total_mass = 0.0;
  bool verdict = false;  // crisp at the smallest eps < m(E)(1 - margin)
  bool exact = true;     // false when a knapsack hit its node budget
};

inline constexpr double kIndexMargin = 1e-9;

// m(E) 2^{-k}, k = 0, 1, ... until below half the smallest positive atom.
std::vector<double> DefaultEpsilonGrid(const Measure& m);

struct KnapsackResult {
  double value = 0.0;
  std::vector<StateIndex> items;
  bool exact = true;
};

// max sum values over subsets with sum weights <= capacity. Zero-weight
// items are always taken. Branch and bound with the Dantzig bound.
KnapsackResult Knapsack(const Vector& values, const Vector& weights, double capacity,
                        long long node_budget = 2000000);
// Greedy ratio relaxation (one item may be taken fractionally).
double FractionalKnapsack(const Vector& values, const Vector& weights, double capacity);

// Profile from precomputed averaged measures; tags[i] labels averages[i] in
// crisp_n.
IndexProfile IndexFromAverages(const std::vector<Vector>& averages,
                               const std::vector<long long>& tags, const Measure& m,
                               const std::vector<double>& epsilons, IndexMethod method);

// Discrete: averages m S_n, n = 1..horizon, plus the Cesaro limit when the
// kernel is markovian.
IndexProfile ComputeIndexProfile(const Kernel& p, const Measure& m,
                                 const std::vector<double>& epsilons, unsigned long horizon,
                                 IndexMethod method = IndexMethod::kBoth);
// Continuous: occupation averages at t = t_min 2^k <= horizon with t_min =
// 1/lambda, plus the limit.
IndexProfile ComputeIndexProfile(const Semigroup& s, const Measure& m,
                                 const std::vector<double>& epsilons, unsigned long horizon,
                                 IndexMethod method = IndexMethod::kBoth, int quad_steps = 64);

Certificate IndexCertificate(const IndexProfile& profile);

}  // namespace ergocert

#endif  // ERGOCERT_INDEX_PROFILE_HPP_
