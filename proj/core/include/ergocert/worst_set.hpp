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


// Exact evaluation of sup_A [row(A) - phi(m(A))] over subsets A.

#ifndef ERGOCERT_WORST_SET_HPP_
#define ERGOCERT_WORST_SET_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "ergocert/kernel.hpp"
#include "ergocert/phi.hpp"

namespace ergocert {

// sum_a (row(a) - c base(a))^+, which is sup_A [row(A) - c base(A)].
double SignedExcess(const Measure& row, const Measure& base, double c);

// Largest support for which the exhaustive subset enumeration runs.
inline constexpr std::size_t kExhaustiveLimit = 22;

struct WorstSet {
  double value = 0.0;
  std::vector<StateIndex> set;
  double prefix_value = 0.0;
  std::optional<double> exhaustive_value;  // set when enumeration ran
};

// Sorts atoms by row(a)/m(a) descending (m(a) = 0 first) and scans prefixes.
// For concave phi this is exact: phi is the infimum of its affine majorants,
// and for each affine majorant the optimum is a ratio-threshold prefix. When
// |supp(row)| <= exhaustive_limit the result is cross-checked against a
// Gray-code enumeration of all subsets and the larger value returned.
WorstSet WorstSetSearch(const Measure& row, const Measure& m, const Phi& phi,
                        std::size_t exhaustive_limit = kExhaustiveLimit);

// Brute force of sup_f [row(f) - phi(m(f))] over f in {0, 1/k, ..., 1}^E.
// Exponential in the number of states; meant for spaces of at most a handful
// of states. Since the objective is convex in f the maximum sits on a vertex,
// so this agrees with WorstSetSearch.
double FunctionGridSup(const Measure& row, const Measure& m, const Phi& phi, int k);

// sup_{0<=f<=1} [P^j f(y) - P^n f(x)] = sum_a (P^j(y,a) - P^n(x,a))^+.
double PairGap(const Kernel& p, StateIndex x, StateIndex y, unsigned long n, unsigned long j);

}  // namespace ergocert

#endif  // ERGOCERT_WORST_SET_HPP_
