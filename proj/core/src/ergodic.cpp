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


#include "ergocert/ergodic.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace ergocert {

std::vector<std::vector<StateIndex>> StronglyConnectedComponents(const Matrix& weights) {
  const auto n = static_cast<std::size_t>(weights.rows());
  std::vector<std::vector<StateIndex>> adj(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < n; ++a) {
      if (weights(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) > 0.0) {
        adj[x].push_back(a);
      }
    }
  }
  // Iterative Tarjan; recursion would overflow on long chains.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateIndex> stack;
  std::vector<std::vector<StateIndex>> out;
  std::size_t counter = 0;
  std::vector<std::pair<StateIndex, std::size_t>> call;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < adj[v].size()) {
        const StateIndex w = adj[v][next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const StateIndex done = v;
      call.pop_back();
      if (!call.empty()) {
        const StateIndex parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<StateIndex> comp;
        StateIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

namespace {

int ClassPeriod(const Matrix& p, const std::vector<StateIndex>& cls) {
  std::vector<long> level(static_cast<std::size_t>(p.rows()), -1);
  std::vector<StateIndex> queue{cls.front()};
  level[cls.front()] = 0;
  long g = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateIndex u = queue[head];
    for (StateIndex v : cls) {
      if (p(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) <= 0.0) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      } else {
        g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
      }
    }
  }
  return g == 0 ? 1 : static_cast<int>(g);
}

Vector ClassInvariant(const Matrix& p, const std::vector<StateIndex>& cls) {
  const auto r = static_cast<Eigen::Index>(cls.size());
  Matrix a(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      // row i of the system: sum_j pi_j (P(j, i) - [i == j]) = 0
      a(i, j) = p(static_cast<Eigen::Index>(cls[static_cast<std::size_t>(j)]),
                  static_cast<Eigen::Index>(cls[static_cast<std::size_t>(i)])) -
                (i == j ? 1.0 : 0.0);
    }
  }
  a.row(r - 1).setOnes();
  Vector rhs = Vector::Zero(r);
  rhs(r - 1) = 1.0;
  Vector pi = Eigen::PartialPivLU<Matrix>(a).solve(rhs);
  pi = pi.cwiseMax(0.0);
  return pi / pi.sum();
}

}  // namespace

ErgodicDecomposition Decompose(const Kernel& p) {
  if (!p.is_markovian()) throw Error("ergodic decomposition needs a markovian kernel");
  const Matrix& m = p.matrix();
  const std::size_t n = p.size();
  auto comps = StronglyConnectedComponents(m);
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (StateIndex x : comps[c]) comp_of[x] = static_cast<int>(c);
  }
  std::vector<std::vector<StateIndex>> closed;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    bool is_closed = true;
    for (StateIndex x : comps[c]) {
      for (std::size_t a = 0; a < n && is_closed; ++a) {
        if (m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) > 0.0 &&
            comp_of[a] != static_cast<int>(c)) {
          is_closed = false;
        }
      }
      if (!is_closed) break;
    }
    if (is_closed) closed.push_back(comps[c]);
  }
  std::sort(closed.begin(), closed.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  ErgodicDecomposition d{.classes = {},
                         .class_measures = {},
                         .periods = {},
                         .transient = StateSet::Empty(p.space()),
                         .absorption = Matrix::Zero(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(closed.size()))};
  std::vector<bool> recurrent(n, false);
  for (std::size_t k = 0; k < closed.size(); ++k) {
    const auto& cls = closed[k];
    for (StateIndex x : cls) recurrent[x] = true;
    Vector pi = ClassInvariant(m, cls);
    Vector w = Vector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < cls.size(); ++i) {
      w(static_cast<Eigen::Index>(cls[i])) = pi(static_cast<Eigen::Index>(i));
      d.absorption(static_cast<Eigen::Index>(cls[i]), static_cast<Eigen::Index>(k)) = 1.0;
    }
    d.classes.emplace_back(p.space(), cls);
    d.class_measures.emplace_back(p.space(), std::move(w));
    d.periods.push_back(ClassPeriod(m, cls));
  }
  std::vector<StateIndex> transient;
  for (StateIndex x = 0; x < n; ++x) {
    if (!recurrent[x]) transient.push_back(x);
  }
  d.transient = StateSet(p.space(), transient);
  if (!transient.empty() && !closed.empty()) {
    const auto t = static_cast<Eigen::Index>(transient.size());
    const auto k = static_cast<Eigen::Index>(closed.size());
    Matrix a = Matrix::Identity(t, t);
    Matrix b = Matrix::Zero(t, k);
    std::vector<int> class_of(n, -1);
    for (std::size_t c = 0; c < closed.size(); ++c) {
      for (StateIndex x : closed[c]) class_of[x] = static_cast<int>(c);
    }
    for (Eigen::Index i = 0; i < t; ++i) {
      const auto xi = static_cast<Eigen::Index>(transient[static_cast<std::size_t>(i)]);
      for (Eigen::Index j = 0; j < t; ++j) {
        a(i, j) -= m(xi, static_cast<Eigen::Index>(transient[static_cast<std::size_t>(j)]));
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (class_of[y] >= 0) b(i, class_of[y]) += m(xi, static_cast<Eigen::Index>(y));
      }
    }
    Matrix h = Eigen::PartialPivLU<Matrix>(a).solve(b);
    for (Eigen::Index i = 0; i < t; ++i) {
      Eigen::VectorXd row = h.row(i).transpose().cwiseMax(0.0);
      const double s = row.sum();
      if (s > 0.0) row /= s;
      d.absorption.row(static_cast<Eigen::Index>(transient[static_cast<std::size_t>(i)])) =
          row.transpose();
    }
  }
  return d;
}

Kernel CesaroLimit(const ErgodicDecomposition& d, const StateSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  Matrix pi_rows(static_cast<Eigen::Index>(d.class_count()), n);
  for (std::size_t k = 0; k < d.class_count(); ++k) {
    pi_rows.row(static_cast<Eigen::Index>(k)) = d.class_measures[k].weights().transpose();
  }
  Matrix limit = d.absorption * pi_rows;
  return Kernel::Derived(space, std::move(limit), KernelKind::kMarkovian);
}

Kernel CesaroLimit(const Kernel& p) { return CesaroLimit(Decompose(p), p.space()); }

unsigned long CommonPeriod(const ErgodicDecomposition& d, unsigned long cap) {
  unsigned long l = 1;
  for (int period : d.periods) {
    l = std::lcm(l, static_cast<unsigned long>(period));
    if (l > cap) return 1;
  }
  return l;
}

}  // namespace ergocert
