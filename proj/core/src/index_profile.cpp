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


#include "ergocert/index_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ergocert/almost_invariance.hpp"
#include "ergocert/ergodic.hpp"

namespace ergocert {

std::vector<double> DefaultEpsilonGrid(const Measure& m) {
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("index profile needs a nonzero measure");
  double smallest = total;
  for (StateIndex a = 0; a < m.size(); ++a) {
    if (m(a) > 0.0) smallest = std::min(smallest, m(a));
  }
  std::vector<double> grid;
  for (double eps = total;; eps *= 0.5) {
    grid.push_back(eps);
    if (eps < 0.5 * smallest || grid.size() >= 200) break;
  }
  return grid;
}

namespace {

// Items of one knapsack instance: free items (zero weight) are folded into
// a base value; the rest are sorted by value density.
struct Prepared {
  double free_value = 0.0;
  std::vector<StateIndex> free_items;
  std::vector<StateIndex> order;
  std::vector<double> value, weight;
};

Prepared Prepare(const Vector& values, const Vector& weights) {
  Prepared p;
  std::vector<StateIndex> items;
  for (Eigen::Index a = 0; a < values.size(); ++a) {
    if (values(a) <= 0.0) continue;
    if (weights(a) <= 0.0) {
      p.free_value += values(a);
      p.free_items.push_back(static_cast<StateIndex>(a));
    } else {
      items.push_back(static_cast<StateIndex>(a));
    }
  }
  std::stable_sort(items.begin(), items.end(), [&](StateIndex a, StateIndex b) {
    return values(static_cast<Eigen::Index>(a)) * weights(static_cast<Eigen::Index>(b)) >
           values(static_cast<Eigen::Index>(b)) * weights(static_cast<Eigen::Index>(a));
  });
  p.order = items;
  for (StateIndex a : items) {
    p.value.push_back(values(static_cast<Eigen::Index>(a)));
    p.weight.push_back(weights(static_cast<Eigen::Index>(a)));
  }
  return p;
}

double FractionalFrom(const Prepared& p, std::size_t start, double cap) {
  double v = 0.0;
  for (std::size_t i = start; i < p.order.size(); ++i) {
    if (p.weight[i] <= cap) {
      cap -= p.weight[i];
      v += p.value[i];
    } else {
      v += p.value[i] * cap / p.weight[i];
      break;
    }
  }
  return v;
}

double Fractional(const Prepared& p, double capacity) {
  return p.free_value + FractionalFrom(p, 0, capacity);
}

struct Search {
  const Prepared& p;
  long long budget;
  long long nodes = 0;
  double best = 0.0;
  std::vector<char> take, best_take;
  bool exhausted = false;

  void Run(std::size_t i, double cap, double val) {
    if (val > best) {
      best = val;
      best_take = take;
    }
    if (i >= p.order.size()) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    if (val + FractionalFrom(p, i, cap) <= best * (1.0 + 1e-15)) return;
    if (p.weight[i] <= cap) {
      take[i] = 1;
      Run(i + 1, cap - p.weight[i], val + p.value[i]);
      take[i] = 0;
    }
    if (exhausted) return;
    Run(i + 1, cap, val);
  }
};

KnapsackResult Solve(const Prepared& p, double capacity, long long budget) {
  // A relative slack absorbs round-off in capacities built from sums.
  const double cap = capacity * (1.0 + 1e-12);
  Search s{p, budget, 0, 0.0, {}, {}, false};
  s.take.assign(p.order.size(), 0);
  s.best_take = s.take;
  // Greedy start gives the search a good incumbent.
  double c = cap, v = 0.0;
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    if (p.weight[i] <= c) {
      c -= p.weight[i];
      v += p.value[i];
      s.take[i] = 1;
    }
  }
  s.best = v;
  s.best_take = s.take;
  std::fill(s.take.begin(), s.take.end(), 0);
  s.Run(0, cap, 0.0);
  KnapsackResult r;
  r.value = p.free_value + s.best;
  r.items = p.free_items;
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    if (s.best_take[i]) r.items.push_back(p.order[i]);
  }
  std::sort(r.items.begin(), r.items.end());
  r.exact = !s.exhausted;
  return r;
}

}  // namespace

KnapsackResult Knapsack(const Vector& values, const Vector& weights, double capacity,
                        long long node_budget) {
  if (values.size() != weights.size()) throw Error("knapsack vectors differ in length");
  if (!(capacity >= 0.0)) throw Error("knapsack capacity must be nonnegative");
  return Solve(Prepare(values, weights), capacity, node_budget);
}

double FractionalKnapsack(const Vector& values, const Vector& weights, double capacity) {
  if (values.size() != weights.size()) throw Error("knapsack vectors differ in length");
  return Fractional(Prepare(values, weights), capacity);
}

IndexProfile IndexFromAverages(const std::vector<Vector>& averages,
                               const std::vector<long long>& tags, const Measure& m,
                               const std::vector<double>& epsilons, IndexMethod method) {
  if (averages.size() != tags.size()) throw Error("index averages and tags differ in length");
  if (averages.empty()) throw Error("index profile needs at least one average");
  if (epsilons.empty()) throw Error("index profile needs a nonempty eps grid");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw Error("eps grid must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw Error("eps grid must be decreasing");
  }
  IndexProfile out;
  out.epsilons = epsilons;
  out.total_mass = m.mass();
  std::vector<Prepared> prepared;
  prepared.reserve(averages.size());
  for (const auto& avg : averages) prepared.push_back(Prepare(avg, m.weights()));
  const bool want_crisp = method != IndexMethod::kFractional;
  for (double eps : epsilons) {
    std::vector<double> frac(prepared.size());
    for (std::size_t i = 0; i < prepared.size(); ++i) frac[i] = Fractional(prepared[i], eps);
    const double frac_max = *std::max_element(frac.begin(), frac.end());
    out.fractional.push_back(frac_max);
    if (!want_crisp) continue;
    std::vector<std::size_t> visit(prepared.size());
    std::iota(visit.begin(), visit.end(), 0);
    std::stable_sort(visit.begin(), visit.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    double best = 0.0;
    long long best_tag = tags.front();
    for (std::size_t i : visit) {
      if (frac[i] <= best) break;
      KnapsackResult r = Solve(prepared[i], eps, 2000000);
      out.exact = out.exact && r.exact;
      if (r.value > best) {
        best = r.value;
        best_tag = tags[i];
      }
    }
    out.crisp.push_back(best);
    out.crisp_n.push_back(best_tag);
  }
  if (want_crisp) {
    out.verdict = out.crisp.back() < out.total_mass * (1.0 - kIndexMargin);
  } else {
    out.verdict = out.fractional.back() < out.total_mass * (1.0 - kIndexMargin);
  }
  return out;
}

IndexProfile ComputeIndexProfile(const Kernel& p, const Measure& m,
                                 const std::vector<double>& epsilons, unsigned long horizon,
                                 IndexMethod method) {
  RequireSameSpace(p.space(), m.space(), "ComputeIndexProfile");
  if (horizon < 1) throw Error("index horizon must be >= 1");
  std::vector<Vector> averages = CesaroSweep(p, m, horizon);
  std::vector<long long> tags(averages.size());
  std::iota(tags.begin(), tags.end(), 1);
  if (p.is_markovian()) {
    averages.push_back(Push(m, CesaroLimit(p)).weights());
    tags.push_back(0);
  }
  IndexProfile out = IndexFromAverages(averages, tags, m, epsilons, method);
  out.horizon = horizon;
  return out;
}

IndexProfile ComputeIndexProfile(const Semigroup& s, const Measure& m,
                                 const std::vector<double>& epsilons, unsigned long horizon,
                                 IndexMethod method, int quad_steps) {
  if (s.is_discrete()) return ComputeIndexProfile(s.kernel(), m, epsilons, horizon, method);
  RequireSameSpace(s.space(), m.space(), "ComputeIndexProfile");
  const double t_min = 1.0 / s.generator().lambda();
  int count = 1;
  while (t_min * std::ldexp(1.0, count) <= static_cast<double>(horizon) && count < 60) ++count;
  std::vector<Vector> averages = OccupationSweep(s, m, t_min, count, quad_steps);
  std::vector<long long> tags(averages.size());
  std::iota(tags.begin(), tags.end(), 1);
  averages.push_back(Push(m, CesaroLimit(s.Skeleton())).weights());
  tags.push_back(0);
  IndexProfile out = IndexFromAverages(averages, tags, m, epsilons, method);
  out.horizon = horizon;
  return out;
}

Certificate IndexCertificate(const IndexProfile& profile) {
  Certificate c = MakeCertificate(ConditionId::kIndexC);
  const bool have_crisp = !profile.crisp.empty();
  const double index = have_crisp ? profile.crisp.back() : profile.fractional.back();
  c.verdict = profile.verdict ? Verdict::kHolds : Verdict::kFails;
  c.constants["index"] = index;
  c.constants["total_mass"] = profile.total_mass;
  c.constants["smallest_eps"] = profile.epsilons.back();
  c.constants["horizon"] = static_cast<double>(profile.horizon);
  c.series["epsilons"] = profile.epsilons;
  if (have_crisp) c.series["crisp"] = profile.crisp;
  c.series["fractional"] = profile.fractional;
  if (!profile.exact) {
    c.AddNote("a knapsack hit its node budget; crisp values are lower bounds");
    if (!profile.verdict) c.verdict = Verdict::kInconclusive;
  }
  if (!profile.verdict) {
    Witness w;
    const long long tag = have_crisp ? profile.crisp_n.back() : 0;
    w.n = tag;
    w.description = tag == 0 ? "worst occupation attained by the Cesaro limit"
                             : "worst occupation attained at this averaging horizon";
    c.witness = w;
  }
  c.AddNote("verdict compares the smallest-eps value with m(E)(1 - 1e-9)");
  return c;
}

}  // namespace ergocert
