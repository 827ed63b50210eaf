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


#include "ergocert/almost_invariance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergocert/ergodic.hpp"
#include "ergocert/index_profile.hpp"
#include "ergocert/worst_set.hpp"

namespace ergocert {

namespace {

std::vector<std::string> Labels(const StateSpace& space, const std::vector<StateIndex>& idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (StateIndex i : idx) out.push_back(space.label(i));
  return out;
}

void RecordPhi(Certificate& c, const Phi& phi) {
  for (const auto& [name, value] : phi.Parameters()) c.constants["phi_" + name] = value;
}

struct Worst {
  double value = 0.0;
  long long tag = 1;
  std::vector<StateIndex> set;
  std::vector<double> per_row;
};

// Max over rows of sup_A [row(A) - phi(m(A))]. Prefix search is exact for
// the concave families accepted by Phi, so no enumeration runs here.
Worst WorstOver(const std::vector<Vector>& rows, const std::vector<long long>& tags,
                const Measure& m, const Phi& phi) {
  Worst w;
  w.value = -1.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const WorstSet ws = WorstSetSearch(Measure(m.space(), rows[i]), m, phi, 0);
    w.per_row.push_back(ws.value);
    if (ws.value > w.value) {
      w.value = ws.value;
      w.tag = tags[i];
      w.set = ws.set;
    }
  }
  w.value = std::max(w.value, 0.0);
  return w;
}

void RequireDelta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw Error("delta must lie in [0, 1)");
}

Certificate EvaluateRows(ConditionId id, const std::vector<Vector>& rows,
                         const std::vector<long long>& tags, const Measure& m,
                         const AlmostInvarianceParams& params, const char* tag_name) {
  RequireDelta(params.delta);
  Certificate c = MakeCertificate(id);
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("almost invariance needs a nonzero measure");
  const Worst w = WorstOver(rows, tags, m, params.phi);
  const double delta_min = w.value / total;
  c.constants["delta"] = params.delta;
  c.constants["delta_min"] = delta_min;
  c.constants["total_mass"] = total;
  c.constants["horizon"] = static_cast<double>(params.horizon);
  c.constants["worst_" + std::string(tag_name)] = static_cast<double>(w.tag);
  RecordPhi(c, params.phi);
  c.series["excess"] = w.per_row;
  const bool ok = delta_min <= params.delta + kCheckTolerance;
  c.verdict = ok ? Verdict::kHolds : Verdict::kFails;
  if (!ok) {
    Witness wit;
    wit.n = w.tag;
    wit.set = Labels(m.space(), w.set);
    wit.description = w.tag == 0 ? "worst set under the limit kernel"
                                 : "worst set at " + std::string(tag_name) + " " +
                                       std::to_string(w.tag);
    c.witness = wit;
  }
  c.AddNote(params.phi.Describe());
  return c;
}

bool UseLimit(const Kernel& p, const AlmostInvarianceParams& params) {
  return params.include_limit && p.is_markovian();
}

}  // namespace

Certificate CheckAuxSupport(const Kernel& p, const Measure& m) {
  RequireSameSpace(p.space(), m.space(), "CheckAuxSupport");
  Certificate c = MakeCertificate(ConditionId::kAuxSupport);
  const Measure pushed = Push(m, p);
  std::vector<StateIndex> leaks;
  double leaked = 0.0;
  for (StateIndex a = 0; a < m.size(); ++a) {
    if (pushed(a) > 0.0 && m(a) <= 0.0) {
      leaks.push_back(a);
      leaked += pushed(a);
    }
  }
  c.constants["leaked_mass"] = leaked;
  c.constants["support_size"] = static_cast<double>(m.support().size());
  if (leaks.empty()) {
    c.verdict = Verdict::kHolds;
  } else {
    c.verdict = Verdict::kFails;
    Witness w;
    w.state = m.space().label(leaks.front());
    w.set = Labels(m.space(), leaks);
    w.description = "mP charges atoms outside supp(m)";
    c.witness = w;
  }
  return c;
}

Certificate CheckAuxSupport(const Semigroup& s, const Measure& m) {
  if (s.is_discrete()) return CheckAuxSupport(s.kernel(), m);
  Certificate c = CheckAuxSupport(s.Skeleton(), m);
  c.AddNote("checked on the uniformized kernel, whose support graph matches alpha R_alpha");
  return c;
}

std::vector<Vector> PowerSweep(const Kernel& p, const Measure& m, unsigned long horizon) {
  RequireSameSpace(p.space(), m.space(), "PowerSweep");
  const Matrix pt = p.matrix().transpose();
  std::vector<Vector> out;
  out.reserve(horizon);
  Vector v = m.weights();
  for (unsigned long n = 1; n <= horizon; ++n) {
    v = (pt * v).cwiseMax(0.0);
    out.push_back(v);
  }
  return out;
}

std::vector<Vector> CesaroSweep(const Kernel& p, const Measure& m, unsigned long horizon) {
  RequireSameSpace(p.space(), m.space(), "CesaroSweep");
  const Matrix pt = p.matrix().transpose();
  std::vector<Vector> out;
  out.reserve(horizon);
  Vector v = m.weights();
  Vector acc = v;
  out.push_back(acc);
  for (unsigned long n = 2; n <= horizon; ++n) {
    v = (pt * v).cwiseMax(0.0);
    acc += v;
    out.push_back(acc / static_cast<double>(n));
  }
  return out;
}

Certificate CheckAlmostInvariant(const Kernel& p, const Measure& m,
                                 const AlmostInvarianceParams& params) {
  if (params.horizon < 1) throw Error("horizon must be >= 1");
  std::vector<Vector> rows = PowerSweep(p, m, params.horizon);
  std::vector<long long> tags(rows.size());
  for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = static_cast<long long>(i + 1);
  if (UseLimit(p, params)) {
    rows.push_back(Push(m, CesaroLimit(p)).weights());
    tags.push_back(0);
  }
  Certificate c = EvaluateRows(ConditionId::kAlmostInv, rows, tags, m, params, "n");
  if (UseLimit(p, params)) c.AddNote("n = 0 in witnesses stands for the Cesaro limit");
  return c;
}

Certificate CheckMeanAlmostInvariant(const Kernel& p, const Measure& m,
                                     const AlmostInvarianceParams& params) {
  if (params.horizon < 1) throw Error("horizon must be >= 1");
  const unsigned long n0 = std::max<unsigned long>(1, params.n0);
  if (n0 > params.horizon) throw Error("empty range: n0 exceeds the horizon");
  std::vector<Vector> all = CesaroSweep(p, m, params.horizon);
  const double mass_average = all.back().sum();
  std::vector<Vector> rows(all.begin() + static_cast<std::ptrdiff_t>(n0 - 1), all.end());
  std::vector<long long> tags(rows.size());
  for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = static_cast<long long>(n0 + i);
  if (UseLimit(p, params)) {
    rows.push_back(Push(m, CesaroLimit(p)).weights());
    tags.push_back(0);
  }
  Certificate c = EvaluateRows(ConditionId::kMeanAlmostInv, rows, tags, m, params, "n");
  c.constants["n0"] = static_cast<double>(n0);
  c.constants["mass_average"] = mass_average;
  if (!p.is_markovian()) {
    c.AddNote("sub-markovian kernel: mass_average is (1/N) sum_k m(P^k 1) at the horizon");
  }
  return c;
}

namespace {

Certificate Optimal(ConditionId id, const std::vector<Vector>& rows,
                    const std::vector<long long>& tags, const Measure& m) {
  Certificate c = MakeCertificate(id);
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("almost invariance needs a nonzero measure");
  double worst_null = 0.0, c_star = 0.0;
  long long worst_tag = tags.front();
  std::vector<StateIndex> null_atoms;
  for (StateIndex a = 0; a < m.size(); ++a) {
    if (m(a) <= 0.0) null_atoms.push_back(a);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double null_mass = 0.0;
    for (Eigen::Index a = 0; a < rows[i].size(); ++a) {
      const double ma = m(static_cast<StateIndex>(a));
      if (ma <= 0.0) {
        null_mass += rows[i](a);
      } else {
        c_star = std::max(c_star, rows[i](a) / ma);
      }
    }
    if (null_mass > worst_null) {
      worst_null = null_mass;
      worst_tag = tags[i];
    }
  }
  const double delta = worst_null / total;
  c.constants["c"] = c_star;
  c.constants["delta"] = delta;
  c.constants["total_mass"] = total;
  c.constants["horizon"] = static_cast<double>(rows.size());
  const bool ok = delta < 1.0 - kIndexMargin;
  c.verdict = ok ? Verdict::kHolds : Verdict::kFails;
  if (!ok) {
    Witness w;
    w.n = worst_tag;
    w.set = Labels(m.space(), null_atoms);
    w.description = "all mass reaches m-null atoms";
    c.witness = w;
  }
  c.AddNote("optimal linear constants: delta is sup_n of the mass on m-null atoms over m(E)");
  return c;
}

}  // namespace

Certificate OptimalAlmostInvariance(const Kernel& p, const Measure& m, unsigned long horizon) {
  std::vector<Vector> rows = PowerSweep(p, m, horizon);
  std::vector<long long> tags(rows.size());
  for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = static_cast<long long>(i + 1);
  if (p.is_markovian()) {
    rows.push_back(Push(m, CesaroLimit(p)).weights());
    tags.push_back(0);
  }
  return Optimal(ConditionId::kAlmostInv, rows, tags, m);
}

Certificate OptimalMeanAlmostInvariance(const Kernel& p, const Measure& m, unsigned long horizon,
                                        unsigned long n0) {
  n0 = std::max<unsigned long>(1, n0);
  if (n0 > horizon) throw Error("empty range: n0 exceeds the horizon");
  std::vector<Vector> all = CesaroSweep(p, m, horizon);
  std::vector<Vector> rows(all.begin() + static_cast<std::ptrdiff_t>(n0 - 1), all.end());
  std::vector<long long> tags(rows.size());
  for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = static_cast<long long>(n0 + i);
  if (p.is_markovian()) {
    rows.push_back(Push(m, CesaroLimit(p)).weights());
    tags.push_back(0);
  }
  return Optimal(ConditionId::kMeanAlmostInv, rows, tags, m);
}

Certificate CheckResolventAlmostInvariant(const Semigroup& s, const Measure& m,
                                          const AlmostInvarianceParams& params,
                                          const std::vector<double>& alphas) {
  RequireSameSpace(s.space(), m.space(), "CheckResolventAlmostInvariant");
  if (alphas.empty()) throw Error("resolvent check needs a nonempty alpha grid");
  std::vector<Vector> rows;
  std::vector<long long> tags;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    rows.push_back(Push(m, ResolventOf(s, alphas[i]).scaled).weights());
    tags.push_back(static_cast<long long>(i + 1));
  }
  const Kernel skel = s.Skeleton();
  const bool limit = params.include_limit && skel.is_markovian();
  if (limit) {
    // Abel and Cesaro limits agree on finite spaces.
    rows.push_back(Push(m, CesaroLimit(skel)).weights());
    tags.push_back(0);
  }
  Certificate c =
      EvaluateRows(ConditionId::kResolventAlmostInv, rows, tags, m, params, "alpha_index");
  c.series["alphas"] = alphas;
  if (limit) c.AddNote("alpha_index 0 stands for the alpha -> 0 limit");
  IndexProfile profile =
      IndexFromAverages(rows, tags, m, DefaultEpsilonGrid(m), IndexMethod::kExact);
  profile.horizon = alphas.size();
  Certificate index = IndexCertificate(profile);
  index.AddNote("index of the averages m alpha R_alpha over the alpha grid");
  c.constants["resolvent_index"] = index.constant("index");
  c.attached.push_back(std::move(index));
  return c;
}

Certificate CheckPartialSubinvariance(const Kernel& p, const Measure& m, unsigned long horizon) {
  RequireSameSpace(p.space(), m.space(), "CheckPartialSubinvariance");
  if (horizon < 1) throw Error("horizon must be >= 1");
  Certificate c = MakeCertificate(ConditionId::kPartialSubInv);
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("partial sub-invariance needs a nonzero measure");
  const double tol = 1e-12 * total;
  const Matrix pt = p.matrix().transpose();
  std::vector<char> in_a(m.size(), 0);
  for (StateIndex x = 0; x < m.size(); ++x) in_a[x] = m(x) > 0.0;
  std::size_t removed = 0;
  while (true) {
    Vector w = Vector::Zero(static_cast<Eigen::Index>(m.size()));
    for (StateIndex x = 0; x < m.size(); ++x) {
      if (in_a[x]) w(static_cast<Eigen::Index>(x)) = m(x);
    }
    if (w.sum() <= 0.0) break;
    Vector v = w;
    unsigned long bad_n = 0;
    std::vector<StateIndex> bad;
    for (unsigned long n = 1; n <= horizon && bad.empty(); ++n) {
      v = pt * v;
      for (StateIndex b = 0; b < m.size(); ++b) {
        if (v(static_cast<Eigen::Index>(b)) > m(b) + tol) bad.push_back(b);
      }
      if (!bad.empty()) bad_n = n;
    }
    if (bad.empty()) {
      std::vector<StateIndex> a;
      for (StateIndex x = 0; x < m.size(); ++x) {
        if (in_a[x]) a.push_back(x);
      }
      const double ma = w.sum();
      const double delta = (total - ma) / total;
      c.verdict = Verdict::kHolds;
      c.constants["mass_A"] = ma;
      c.constants["delta"] = delta;
      c.constants["removed"] = static_cast<double>(removed);
      c.constants["horizon"] = static_cast<double>(horizon);
      Witness wit;
      wit.set = Labels(m.space(), a);
      wit.description = "set A with m(1_A P^n 1_B) <= m(B) for all B and n <= horizon";
      c.witness = wit;
      if (delta < 1.0) {
        AlmostInvarianceParams params;
        params.phi = Phi::Linear(1.0);
        params.delta = delta;
        params.horizon = horizon;
        c.attached.push_back(CheckAlmostInvariant(p, m, params));
      }
      return c;
    }
    const Matrix pn = Power(p, bad_n).matrix();
    StateIndex worst = m.size();
    double worst_contrib = -1.0;
    for (StateIndex x = 0; x < m.size(); ++x) {
      if (!in_a[x]) continue;
      double contrib = 0.0;
      for (StateIndex b : bad) {
        contrib += m(x) * pn(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(b));
      }
      if (contrib > worst_contrib) {
        worst_contrib = contrib;
        worst = x;
      }
    }
    in_a[worst] = 0;
    ++removed;
  }
  c.verdict = Verdict::kInconclusive;
  c.constants["removed"] = static_cast<double>(removed);
  c.AddNote("greedy removal emptied the candidate set; no A with m(A) > 0 was found");
  return c;
}

DensityConstants AlmostInvarianceFromDensity(const Measure& m, const Measure& nu) {
  RequireSameSpace(m.space(), nu.space(), "AlmostInvarianceFromDensity");
  DensityConstants out;
  const double total = m.mass();
  if (!(total > 0.0) || !(nu.mass() > 0.0)) return out;
  const double scale = total / nu.mass();
  std::vector<std::pair<double, double>> dens;  // (rho, m)
  double gap = 0.0;
  for (StateIndex a = 0; a < m.size(); ++a) {
    if (m(a) <= 0.0) {
      if (nu(a) > 0.0) throw Error("nu is not absolutely continuous with respect to m");
      continue;
    }
    const double rho = scale * nu(a) / m(a);
    gap += m(a) * std::max(0.0, 1.0 - rho);
    dens.emplace_back(rho, m(a));
  }
  out.gamma = gap / total;
  out.delta = 0.5 * (1.0 + out.gamma);
  const double budget = 0.5 * (1.0 - out.gamma) * total;
  std::sort(dens.begin(), dens.end(), std::greater<>());
  // Smallest c with sum_{rho > c} m rho <= budget: walk thresholds downward.
  double tail = 0.0;
  out.c = dens.empty() ? 0.0 : dens.front().first;
  for (std::size_t i = 0; i < dens.size(); ++i) {
    tail += dens[i].first * dens[i].second;
    // Threshold at the next value down admits dens[0..i].
    const double next = i + 1 < dens.size() ? dens[i + 1].first : 0.0;
    if (tail > budget * (1.0 + 1e-12)) break;
    out.c = next;
  }
  return out;
}

}  // namespace ergocert
