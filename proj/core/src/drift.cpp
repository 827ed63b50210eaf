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


#include "ergocert/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ergocert/almost_invariance.hpp"
#include "ergocert/ergodic.hpp"

namespace ergocert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> Labels(const StateSpace& space, const std::vector<StateIndex>& idx) {
  std::vector<std::string> out;
  for (StateIndex i : idx) out.push_back(space.label(i));
  return out;
}

void RequireNonnegative(const StateFn& f, const char* what) {
  for (StateIndex x = 0; x < f.size(); ++x) {
    if (f(x) < 0.0) throw Error(std::string(what) + " must be nonnegative");
  }
}

struct DriftScan {
  double max_violation = -kInf;
  std::optional<StateIndex> worst;
  std::vector<double> slack;  // rhs - lhs per state, inf off [V < inf]
};

// Compares PV(x) with rhs(x) on [V < inf].
template <typename Rhs>
DriftScan ScanDrift(const Kernel& p, const StateFn& v, Rhs rhs) {
  const StateFn pv = Apply(p, StateFn(v.space(), v.values(), true));
  DriftScan s;
  s.slack.assign(v.size(), kInf);
  for (StateIndex x = 0; x < v.size(); ++x) {
    if (!std::isfinite(v(x))) continue;
    const double r = rhs(x);
    const double viol = pv(x) - r;
    s.slack[x] = -viol;
    // Relative slack keeps large Lyapunov values from tripping on round-off.
    const double excess = viol - kCheckTolerance * std::max(1.0, std::abs(r));
    if (viol > s.max_violation) s.max_violation = viol;
    if (excess > 0.0 && (!s.worst || viol > pv(*s.worst) - rhs(*s.worst))) s.worst = x;
  }
  if (s.max_violation == -kInf) s.max_violation = 0.0;
  return s;
}

void AttachDriftFailure(Certificate& c, const StateSpace& space, const DriftScan& s,
                        const std::string& what) {
  Witness w;
  w.state = space.label(*s.worst);
  w.description = what + " fails at this state";
  c.witness = w;
}

}  // namespace

Certificate CheckSmallness(const Kernel& p, const StateSet& c) {
  RequireSameSpace(p.space(), c.space(), "CheckSmallness");
  if (c.empty()) throw Error("smallness needs a nonempty set");
  Certificate cert = MakeCertificate(ConditionId::kSmallness);
  Vector nu_hat = p.matrix().row(static_cast<Eigen::Index>(c.members().front())).transpose();
  for (StateIndex x : c.members()) {
    nu_hat = nu_hat.cwiseMin(p.matrix().row(static_cast<Eigen::Index>(x)).transpose());
  }
  const double alpha = nu_hat.sum();
  cert.constants["alpha"] = alpha;
  cert.constants["set_size"] = static_cast<double>(c.size());
  if (alpha > 0.0) {
    cert.verdict = Verdict::kHolds;
    Vector nu = nu_hat / alpha;
    cert.series["nu"] = std::vector<double>(nu.data(), nu.data() + nu.size());
  } else {
    cert.verdict = Verdict::kFails;
    Witness w;
    w.set = Labels(p.space(), c.members());
    w.description = "rows of the set share no common mass";
    cert.witness = w;
  }
  return cert;
}

Certificate CheckAssumptionA(const Kernel& p, const StateFn& v, double gamma, double b, double r) {
  RequireSameSpace(p.space(), v.space(), "CheckAssumptionA");
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error("gamma must lie in (0, 1)");
  if (!(b >= 0.0)) throw Error("b must be nonnegative");
  RequireNonnegative(v, "V");
  Certificate c = MakeCertificate(ConditionId::kAssumpA);
  c.constants["gamma"] = gamma;
  c.constants["b"] = b;
  c.constants["r"] = r;
  const DriftScan s = ScanDrift(p, v, [&](StateIndex x) { return gamma * v(x) + b; });
  c.constants["max_drift_violation"] = s.max_violation;
  const double threshold = 2.0 * b / (1.0 - gamma);
  c.constants["r_threshold"] = threshold;
  const bool drift_ok = !s.worst;
  const bool threshold_ok = r > threshold;
  const StateSet level = v.sublevel_set(r);
  bool small_ok = false;
  if (level.empty()) {
    c.AddNote("sub-level set [V <= r] is empty");
  } else {
    Certificate small = CheckSmallness(p, level);
    small_ok = small.holds();
    c.constants["alpha"] = small.constant("alpha");
    c.attached.push_back(std::move(small));
  }
  c.verdict = drift_ok && threshold_ok && small_ok ? Verdict::kHolds : Verdict::kFails;
  if (!drift_ok) {
    AttachDriftFailure(c, p.space(), s, "PV <= gamma V + b");
  } else if (!threshold_ok) {
    Witness w;
    w.description = "strict inequality required: r > 2b / (1 - gamma)";
    c.witness = w;
    c.AddNote("strict inequality required");
  } else if (!small_ok) {
    Witness w;
    w.set = Labels(p.space(), level.members());
    w.description = "sub-level set [V <= r] is not small";
    c.witness = w;
  }
  return c;
}

Certificate CheckAssumptionAPrime(const Kernel& p, const StateFn& v, double gamma, double b,
                                  const StateSet& s) {
  RequireSameSpace(p.space(), v.space(), "CheckAssumptionAPrime");
  RequireSameSpace(p.space(), s.space(), "CheckAssumptionAPrime");
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error("gamma must lie in (0, 1)");
  if (!(b >= 0.0)) throw Error("b must be nonnegative");
  for (StateIndex x = 0; x < v.size(); ++x) {
    if (v(x) < 1.0) throw Error("V must be >= 1");
  }
  Certificate c = MakeCertificate(ConditionId::kAssumpAPrime);
  c.constants["gamma"] = gamma;
  c.constants["b"] = b;
  const DriftScan scan = ScanDrift(
      p, v, [&](StateIndex x) { return gamma * v(x) + (s.contains(x) ? b : 0.0); });
  c.constants["max_drift_violation"] = scan.max_violation;
  bool small_ok = false;
  if (s.empty()) {
    c.AddNote("S is empty, so it cannot be small");
  } else {
    Certificate small = CheckSmallness(p, s);
    small_ok = small.holds();
    c.constants["alpha"] = small.constant("alpha");
    c.attached.push_back(std::move(small));
  }
  const bool drift_ok = !scan.worst;
  c.verdict = drift_ok && small_ok ? Verdict::kHolds : Verdict::kFails;
  if (!drift_ok) {
    AttachDriftFailure(c, p.space(), scan, "PV <= gamma V + b 1_S");
  } else if (!small_ok) {
    Witness w;
    w.set = Labels(p.space(), s.members());
    w.description = "S is not small";
    c.witness = w;
  }
  return c;
}

Certificate CheckAssumptionB(const Kernel& p, const StateFn& v, double b, const StateSet& c,
                             const std::vector<StateSet>& tail_sets) {
  RequireSameSpace(p.space(), v.space(), "CheckAssumptionB");
  RequireSameSpace(p.space(), c.space(), "CheckAssumptionB");
  if (!(b >= 0.0)) throw Error("b must be nonnegative");
  RequireNonnegative(v, "V");
  for (std::size_t i = 1; i < tail_sets.size(); ++i) {
    if (!tail_sets[i].is_subset_of(tail_sets[i - 1])) {
      throw Error("tail sets must be decreasing (set " + std::to_string(i) +
                  " is not inside its predecessor)");
    }
  }
  Certificate cert = MakeCertificate(ConditionId::kAssumpB);
  cert.constants["b"] = b;
  const DriftScan s =
      ScanDrift(p, v, [&](StateIndex x) { return v(x) - 1.0 + (c.contains(x) ? b : 0.0); });
  cert.constants["max_drift_violation"] = s.max_violation;
  std::vector<double> tails;
  for (const auto& a : tail_sets) {
    double sup = 0.0;
    for (StateIndex x : c.members()) {
      double mass = 0.0;
      for (StateIndex y : a.members()) mass += p(x, y);
      sup = std::max(sup, mass);
    }
    tails.push_back(sup);
  }
  cert.series["tail_sups"] = tails;
  double dom = 0.0;
  for (StateIndex a = 0; a < p.size(); ++a) {
    double mx = 0.0;
    for (StateIndex x : c.members()) mx = std::max(mx, p(x, a));
    dom += mx;
  }
  cert.constants["domination_mass"] = dom;
  cert.AddNote("uniform additivity holds on a finite space: rows on C are dominated by a finite "
               "measure; the tail sequence is evidence only");
  cert.verdict = s.worst ? Verdict::kFails : Verdict::kHolds;
  if (s.worst) AttachDriftFailure(cert, p.space(), s, "PV <= V - 1 + b 1_C");
  return cert;
}

Certificate CheckGeneralizedDrift(const Kernel& p, const StateFn& v, const StateFn& b_fn,
                                  const StateSet& c) {
  RequireSameSpace(p.space(), v.space(), "CheckGeneralizedDrift");
  RequireSameSpace(p.space(), b_fn.space(), "CheckGeneralizedDrift");
  RequireSameSpace(p.space(), c.space(), "CheckGeneralizedDrift");
  RequireNonnegative(v, "V");
  RequireNonnegative(b_fn, "b");
  Certificate cert = MakeCertificate(ConditionId::kGenDrift);
  const DriftScan s = ScanDrift(
      p, v, [&](StateIndex x) { return v(x) - 1.0 + (c.contains(x) ? b_fn(x) : 0.0); });
  cert.constants["max_drift_violation"] = s.max_violation;
  double bmax = 0.0;
  for (StateIndex x : c.members()) bmax = std::max(bmax, b_fn(x));
  cert.constants["b_max_on_C"] = bmax;
  cert.series["slack"] = s.slack;
  cert.verdict = s.worst ? Verdict::kFails : Verdict::kHolds;
  if (s.worst) AttachDriftFailure(cert, p.space(), s, "PV <= V - 1 + b 1_C");
  cert.AddNote("checked on the whole space, as the occupation bounds require");
  return cert;
}

DriftFit FitGeometricDrift(const Kernel& p, const StateFn& v, double level) {
  RequireSameSpace(p.space(), v.space(), "FitGeometricDrift");
  const StateFn pv = Apply(p, StateFn(v.space(), v.values(), true));
  DriftFit fit;
  for (StateIndex x = 0; x < v.size(); ++x) {
    if (std::isfinite(v(x)) && v(x) > level && v(x) > 0.0) {
      fit.gamma = std::max(fit.gamma, pv(x) / v(x));
    }
  }
  fit.b = DriftOffset(p, v, fit.gamma);
  return fit;
}

double DriftOffset(const Kernel& p, const StateFn& v, double gamma) {
  RequireSameSpace(p.space(), v.space(), "DriftOffset");
  const StateFn pv = Apply(p, StateFn(v.space(), v.values(), true));
  double b = 0.0;
  for (StateIndex x = 0; x < v.size(); ++x) {
    if (std::isfinite(v(x))) b = std::max(b, pv(x) - gamma * v(x));
  }
  return b;
}

namespace {

unsigned long LevelIndex(const StateFn& v, const Measure& m) {
  double lo = kInf;
  for (StateIndex x = 0; x < m.size(); ++x) {
    if (m(x) > 0.0) lo = std::min(lo, v(x));
  }
  if (!std::isfinite(lo)) throw Error("V is infinite on the whole support of m");
  return std::max<unsigned long>(1, static_cast<unsigned long>(std::ceil(lo)));
}

// m(S_n 1_C) for n = 1..horizon, then the limit when markovian.
std::vector<double> OccupationOfSet(const Kernel& p, const Measure& m, const StateSet& c,
                                    unsigned long horizon) {
  std::vector<double> out;
  for (const Vector& row : CesaroSweep(p, m, horizon)) {
    double s = 0.0;
    for (StateIndex x : c.members()) s += row(static_cast<Eigen::Index>(x));
    out.push_back(s);
  }
  if (p.is_markovian()) out.push_back(Push(m, CesaroLimit(p)).mass_of(c));
  return out;
}

// m(1_D S_n g) for n = 1..horizon (and the limit when markovian).
std::vector<double> WeightedCesaro(const Kernel& p, const Measure& m, const StateSet& d,
                                   const Vector& g, unsigned long horizon) {
  Vector md = Vector::Zero(static_cast<Eigen::Index>(m.size()));
  for (StateIndex x : d.members()) md(static_cast<Eigen::Index>(x)) = m(x);
  std::vector<double> out;
  Vector pk = g;
  Vector acc = g;
  out.push_back(md.dot(acc));
  for (unsigned long n = 2; n <= horizon; ++n) {
    pk = p.matrix() * pk;
    acc += pk;
    out.push_back(md.dot(acc) / static_cast<double>(n));
  }
  if (p.is_markovian()) out.push_back(md.dot(CesaroLimit(p).matrix() * g));
  return out;
}

}  // namespace

OccupationBound DriftOccupationBound(const Kernel& p, const StateFn& v, double b,
                                     const StateSet& c, const Measure& m, unsigned long horizon) {
  if (!(b > 0.0)) throw Error("occupation bound needs b > 0");
  OccupationBound out;
  out.n0 = LevelIndex(v, m);
  out.eps = m.mass_of(v.sublevel_set(static_cast<double>(out.n0)));
  out.bound = out.eps / (2.0 * b);
  const unsigned long start = 2 * out.n0;
  horizon = std::max(horizon, start);
  const std::vector<double> occ = OccupationOfSet(p, m, c, horizon);
  out.observed_inf = kInf;
  for (std::size_t i = start - 1; i < occ.size(); ++i) {
    out.observed_inf = std::min(out.observed_inf, occ[i]);
  }
  out.satisfied = out.observed_inf >= out.bound - kCheckTolerance;
  return out;
}

OccupationBound DriftOccupationBound(const Kernel& p, const StateFn& v, const StateFn& b_fn,
                                     const StateSet& c, const Measure& m, unsigned long horizon) {
  OccupationBound out;
  out.n0 = LevelIndex(v, m);
  const StateSet d = v.sublevel_set(static_cast<double>(out.n0));
  out.eps = m.mass_of(d);
  const unsigned long start = 2 * out.n0;
  horizon = std::max(horizon, start);
  const std::vector<double> occ = OccupationOfSet(p, m, c, horizon);
  const Vector b2 = b_fn.values().cwiseProduct(b_fn.values());
  const std::vector<double> denom = WeightedCesaro(p, m, d, b2, horizon);
  out.observed_inf = kInf;
  out.bound = kInf;
  out.satisfied = true;
  for (std::size_t i = start - 1; i < occ.size(); ++i) {
    const double bound_n = denom[i] > 0.0 ? out.eps * out.eps / (4.0 * denom[i]) : kInf;
    out.bound = std::min(out.bound, bound_n);
    out.observed_inf = std::min(out.observed_inf, occ[i]);
    if (occ[i] < bound_n - kCheckTolerance) out.satisfied = false;
  }
  return out;
}

Certificate CheckConditionD(const Kernel& p, const Measure& m, const StateFn& v,
                            const StateFn& b_fn, double r, unsigned long n0,
                            unsigned long horizon) {
  RequireSameSpace(p.space(), m.space(), "CheckConditionD");
  n0 = std::max<unsigned long>(1, n0);
  if (n0 > horizon) throw Error("empty range: N0 exceeds the horizon");
  Certificate c = MakeCertificate(ConditionId::kCondD);
  const StateSet level = v.sublevel_set(r);
  const Vector b2 = b_fn.values().cwiseProduct(b_fn.values());
  const std::vector<double> all = WeightedCesaro(p, m, level, b2, horizon);
  std::vector<double> profile(all.begin() + static_cast<std::ptrdiff_t>(n0 - 1),
                              all.begin() + static_cast<std::ptrdiff_t>(horizon));
  const double mx = *std::max_element(all.begin() + static_cast<std::ptrdiff_t>(n0 - 1), all.end());
  c.series["profile"] = profile;
  c.constants["sup"] = mx;
  c.constants["r"] = r;
  c.constants["N0"] = static_cast<double>(n0);
  c.constants["horizon"] = static_cast<double>(horizon);
  if (all.size() > horizon) c.constants["limit"] = all.back();
  double bmax = 0.0;
  for (StateIndex x = 0; x < b_fn.size(); ++x) bmax = std::max(bmax, std::abs(b_fn(x)));
  c.constants["sup_bound_bounded_b"] = bmax * bmax * m.mass_of(level);
  c.verdict = std::isfinite(mx) ? Verdict::kHolds : Verdict::kFails;
  c.AddNote("finite on a finite space; use ConditionDAcrossLevels for truncation families");
  return c;
}

Certificate ConditionDAcrossLevels(const std::vector<double>& level_maxima) {
  Certificate c = MakeCertificate(ConditionId::kCondD);
  c.series["level_maxima"] = level_maxima;
  if (level_maxima.size() < 2) {
    c.verdict = Verdict::kInconclusive;
    c.AddNote("needs at least two truncation levels");
    return c;
  }
  const double last = level_maxima.back();
  const double prev = level_maxima[level_maxima.size() - 2];
  const double rel = (last - prev) / std::max(std::abs(prev), 1e-300);
  c.constants["last_relative_increase"] = rel;
  c.verdict = rel <= 0.01 ? Verdict::kHolds : Verdict::kInconclusive;
  c.AddNote("bounded when the last increase across levels is within 1% relative");
  return c;
}

}  // namespace ergocert
