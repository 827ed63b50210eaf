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


// Closed communicating classes of a markovian kernel, their invariant laws,
// absorption probabilities and the resulting Cesaro limit kernel.

#ifndef ERGOCERT_ERGODIC_HPP_
#define ERGOCERT_ERGODIC_HPP_

#include <vector>

#include "ergocert/kernel.hpp"

namespace ergocert {

// Strongly connected components of the digraph {(x, a) : weights(x, a) > 0},
// each sorted, listed in reverse topological order (Tarjan).
std::vector<std::vector<StateIndex>> StronglyConnectedComponents(const Matrix& weights);

struct ErgodicDecomposition {
  std::vector<StateSet> classes;          // closed classes
  std::vector<Measure> class_measures;    // invariant probability per class
  std::vector<int> periods;               // period per class
  StateSet transient;
  // absorption(x, k): probability of ending in classes[k] from x.
  Matrix absorption;

  std::size_t class_count() const { return classes.size(); }
};

// Requires a markovian kernel.
ErgodicDecomposition Decompose(const Kernel& p);

// Pi(x, a) = sum_k absorption(x, k) class_measures[k](a), the limit of the
// Cesaro averages S_n.
Kernel CesaroLimit(const ErgodicDecomposition& d, const StateSpace& space);
Kernel CesaroLimit(const Kernel& p);

// Least common multiple of the class periods, or 1 if it would exceed cap.
unsigned long CommonPeriod(const ErgodicDecomposition& d, unsigned long cap = 10000);

}  // namespace ergocert

#endif  // ERGOCERT_ERGODIC_HPP_
