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


#include "ergocert/harris.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ergocert/drift.hpp"
#include "ergocert/ergodic.hpp"
#include "ergocert/index_profile.hpp"
#include "ergocert/solver.hpp"
#include "ergocert/worst_set.hpp"

namespace ergocert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> Labels(const StateSpace& space, const std::vector<StateIndex>& idx) {
  std::vector<std::string> out;
  for (StateIndex i : idx) out.push_back(space.label(i));
  return out;
}

// m R for a finite m of any mass, with the support repair of AuxiliaryMeasure.
Measure ResolventImage(const Kernel& p, const Measure& m) {
  return AuxiliaryMeasure(p, m.normalized()).scaled(m.mass());
}

// m(S_n g) for n = 1..horizon; the limit is appended when markovian.
std::vector<double> CesaroValues(const Kernel& p, const Measure& m, const Vector& g,
                                 unsigned long horizon) {
  std::vector<double> out;
  for (const Vector& row : CesaroSweep(p, m, horizon)) out.push_back(row.dot(g));
  if (p.is_markovian()) out.push_back(Push(m, CesaroLimit(p)).weights().dot(g));
  return out;
}

struct ConstructiveDelta {
  unsigned long n1 = 0;
  double delta = 1.0;
  std::vector<double> per_n;  // delta_n for n = 2..horizon + 1
};

// delta_n = m(S_{n-1} g) / m(E) + 1 + 1/n with g = 1_C (gamma - 1); n1 is the
// first n >= n0 + 1 after which every delta_n in range stays below 1.
std::optional<ConstructiveDelta> BuildDelta(const std::vector<double>& values,
                                            unsigned long horizon, double total,
                                            unsigned long n0) {
  ConstructiveDelta out;
  for (unsigned long n = 2; n <= horizon + 1; ++n) {
    out.per_n.push_back(values[n - 2] / total + 1.0 + 1.0 / static_cast<double>(n));
  }
  const bool has_limit = values.size() > horizon;
  const double limit = has_limit ? values.back() / total + 1.0 : -kInf;
  if (has_limit && !(limit < 1.0)) return std::nullopt;
  const unsigned long start = std::max<unsigned long>(n0 + 1, 2);
  unsigned long n1 = horizon + 2;
  for (unsigned long n = horizon + 1; n >= start; --n) {
    if (!(out.per_n[n - 2] < 1.0 - 1e-12)) break;
    n1 = n;
  }
  if (n1 > horizon + 1) return std::nullopt;
  out.n1 = n1;
  out.delta = has_limit ? limit : -kInf;
  for (unsigned long n = n1; n <= horizon + 1; ++n) out.delta = std::max(out.delta, out.per_n[n - 2]);
  out.delta = std::max(out.delta, 0.0);
  return out;
}

// Mean almost invariance of m R with phi' and the constructive delta.
Certificate ConclusionOnResolvent(const Kernel& p, const Measure& m, const Phi& phi,
                                  const ConstructiveDelta& d, unsigned long horizon) {
  AlmostInvarianceParams params;
  params.phi = phi;
  params.delta = d.delta;
  params.n0 = d.n1;
  params.horizon = std::max(horizon, d.n1);
  Certificate c = CheckMeanAlmostInvariant(p, ResolventImage(p, m), params);
  c.AddNote("conclusion for m R with the constructive delta");
  return c;
}

struct PartI {
  bool ok = true;
  double sup = -kInf;
  double prefix_sup = -kInf;
  std::optional<double> exhaustive_sup;
  std::optional<StateIndex> bad_x;
  std::vector<StateIndex> bad_set;
};

// sup_A [P(x, A) - phi(m(A))] <= delta on C.
PartI OneStepBound(const Kernel& p, const Measure& m, const Phi& phi, double delta,
                   const StateSet& c) {
  PartI out;
  double worst_excess = -kInf;
  for (StateIndex x : c.members()) {
    const WorstSet ws = WorstSetSearch(p.row(x), m, phi);
    out.sup = std::max(out.sup, ws.value);
    out.prefix_sup = std::max(out.prefix_sup, ws.prefix_value);
    if (ws.exhaustive_value) {
      out.exhaustive_sup = std::max(out.exhaustive_sup.value_or(-kInf), *ws.exhaustive_value);
    }
    const double excess = ws.value - delta;
    if (excess > kCheckTolerance && excess > worst_excess) {
      worst_excess = excess;
      out.ok = false;
      out.bad_x = x;
      out.bad_set = ws.set;
    }
  }
  return out;
}

void RecordPartI(Certificate& cert, const PartI& part, const StateSpace& space) {
  cert.constants["set_sup"] = part.sup;
  cert.constants["prefix_sup"] = part.prefix_sup;
  if (part.exhaustive_sup) cert.constants["exhaustive_sup"] = *part.exhaustive_sup;
  if (!part.ok) {
    Witness w;
    w.state = space.label(*part.bad_x);
    w.set = Labels(space, part.bad_set);
    w.description = "P(x, A) - phi(m(A)) exceeds delta";
    cert.witness = w;
  }
}

double InfFrom(const std::vector<double>& values, unsigned long n0) {
  double inf = kInf;
  for (std::size_t i = n0 - 1; i < values.size(); ++i) inf = std::min(inf, values[i]);
  return inf;
}

void RequireRange(unsigned long n0, unsigned long horizon) {
  if (n0 < 1) throw Error("n0 must be >= 1");
  if (n0 > horizon) throw Error("empty range: n0 exceeds the horizon");
}

}  // namespace

Certificate CheckAssumptionC(const Kernel& p, const Measure& m, double L, const StateFn& gamma_fn,
                             const StateSet& c, unsigned long n0, unsigned long horizon) {
  RequireSameSpace(p.space(), m.space(), "CheckAssumptionC");
  RequireSameSpace(p.space(), gamma_fn.space(), "CheckAssumptionC");
  RequireSameSpace(p.space(), c.space(), "CheckAssumptionC");
  if (!(L >= 0.0)) throw Error("L must be nonnegative");
  for (StateIndex x = 0; x < gamma_fn.size(); ++x) {
    if (!(gamma_fn(x) >= 0.0)) throw Error("gamma must be nonnegative");
  }
  RequireRange(n0, horizon);
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("Assumption C needs a nonzero measure");
  Certificate cert = MakeCertificate(ConditionId::kAssumpC);
  cert.constants["L"] = L;
  cert.constants["total_mass"] = total;

  // i) the linear set-function bound is exact through positive parts.
  bool part_i = true;
  double worst = -kInf;
  std::vector<double> excess(p.size(), 0.0);
  for (StateIndex x : c.members()) {
    const double e = SignedExcess(p.row(x), m, L);
    excess[x] = e - gamma_fn(x);
    if (excess[x] > worst) worst = excess[x];
    if (excess[x] > kCheckTolerance && part_i) {
      part_i = false;
      Witness w;
      w.state = p.space().label(x);
      for (StateIndex a = 0; a < p.size(); ++a) {
        if (p(x, a) > L * m(a)) w.set.push_back(p.space().label(a));
      }
      w.description = "P(x, A) - L m(A) exceeds gamma(x)";
      cert.witness = w;
    }
  }
  cert.constants["max_excess_over_gamma"] = c.empty() ? 0.0 : worst;

  // ii.1) automatic for linear phi; the support condition of m R is recorded.
  const Measure mr = ResolventImage(p, m);
  Certificate support = CheckAuxSupport(p, mr);
  const bool part_ii1 = support.holds();
  cert.attached.push_back(std::move(support));

  // ii.2)
  Vector g = Vector::Zero(static_cast<Eigen::Index>(p.size()));
  for (StateIndex x : c.members()) g(static_cast<Eigen::Index>(x)) = gamma_fn(x) - 1.0;
  const std::vector<double> values = CesaroValues(p, m, g, horizon);
  double sup = -kInf;
  long long sup_n = 0;
  for (std::size_t i = n0 - 1; i < values.size(); ++i) {
    if (values[i] > sup) {
      sup = values[i];
      sup_n = i < horizon ? static_cast<long long>(i + 1) : 0;
    }
  }
  cert.series["ii2_values"] = values;
  cert.constants["ii2_sup"] = sup;
  const bool part_ii2 = sup < -1e-14 * total;

  cert.verdict = part_i && part_ii1 && part_ii2 ? Verdict::kHolds : Verdict::kFails;
  if (part_i && !part_ii2) {
    Witness w;
    w.n = sup_n;
    w.description = "m(S_n(1_C (gamma - 1))) is not negative";
    cert.witness = w;
  }
  if (!cert.holds()) return cert;

  const auto d = BuildDelta(values, horizon, total, n0);
  if (!d) {
    cert.AddNote("no n1 within the horizon with delta_n < 1; conclusion not attached");
    return cert;
  }
  cert.constants["n1"] = static_cast<double>(d->n1);
  cert.constants["delta"] = d->delta;
  cert.constants["c"] = L * total;
  cert.series["delta_n"] = d->per_n;
  cert.attached.push_back(ConclusionOnResolvent(p, m, Phi::Linear(L * total), *d, horizon));
  return cert;
}

Certificate CheckAssumptionCPrime(const Kernel& p, const Measure& m,
                                  const AlmostInvarianceParams& params, const StateSet& c,
                                  int f_grid) {
  RequireSameSpace(p.space(), m.space(), "CheckAssumptionCPrime");
  RequireSameSpace(p.space(), c.space(), "CheckAssumptionCPrime");
  if (!(params.delta >= 0.0 && params.delta < 1.0)) throw Error("delta must lie in [0, 1)");
  RequireRange(params.n0, params.horizon);
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("Assumption C' needs a nonzero measure");
  Certificate cert = MakeCertificate(ConditionId::kAssumpCPrime);
  cert.constants["delta"] = params.delta;
  cert.constants["total_mass"] = total;
  for (const auto& [name, value] : params.phi.Parameters()) cert.constants["phi_" + name] = value;

  const PartI part = OneStepBound(p, m, params.phi, params.delta, c);
  RecordPartI(cert, part, p.space());
  if (f_grid > 0 && p.size() <= 6) {
    double fsup = -kInf;
    for (StateIndex x : c.members()) {
      fsup = std::max(fsup, FunctionGridSup(p.row(x), m, params.phi, f_grid));
    }
    cert.constants["f_grid_sup"] = fsup;
    cert.AddNote("f-grid sup over non-indicator functions reported next to the set sup");
  }

  const Vector one_c = StateFn::Indicator(c).values();
  const std::vector<double> occ = CesaroValues(p, m, one_c, params.horizon);
  const double inf = InfFrom(occ, params.n0);
  cert.series["occupation"] = occ;
  cert.constants["inf_occupation"] = inf;
  const bool part_ii = inf > 1e-14 * total;

  cert.verdict = part.ok && part_ii ? Verdict::kHolds : Verdict::kFails;
  if (part.ok && !part_ii) {
    Witness w;
    w.description = "m(S_n 1_C) is not bounded away from 0";
    cert.witness = w;
  }
  if (!cert.holds()) return cert;

  Vector g = (params.delta - 1.0) * one_c;
  const std::vector<double> values = CesaroValues(p, m, g, params.horizon);
  const auto d = BuildDelta(values, params.horizon, total, params.n0);
  if (!d) {
    cert.AddNote("no n1 within the horizon with delta_n < 1; conclusion not attached");
    return cert;
  }
  cert.constants["n1"] = static_cast<double>(d->n1);
  cert.constants["conclusion_delta"] = d->delta;
  cert.series["delta_n"] = d->per_n;
  cert.attached.push_back(
      ConclusionOnResolvent(p, m, params.phi.Scaled(total), *d, params.horizon));
  return cert;
}

Certificate CheckConditionE(const Kernel& p, const Measure& m, const StateFn& v,
                            const StateFn& b_fn, const StateSet& c,
                            const ConditionEParams& params) {
  RequireSameSpace(p.space(), m.space(), "CheckConditionE");
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("Condition E needs a nonzero measure");
  Certificate cert = MakeCertificate(ConditionId::kCondE);

  Certificate drift = CheckGeneralizedDrift(p, v, b_fn, c);
  if (!drift.holds()) {
    cert.verdict = Verdict::kFails;
    cert.witness = drift.witness;
    cert.AddNote("generalized drift fails");
    cert.attached.push_back(std::move(drift));
    return cert;
  }
  cert.attached.push_back(std::move(drift));

  Certificate cond_d = CheckConditionD(p, m, v, b_fn, params.r, params.n0, params.horizon);
  const bool d_ok = cond_d.holds();
  cert.constants["condition_d_sup"] = cond_d.constant("sup");
  cert.attached.push_back(std::move(cond_d));

  const PartI part = OneStepBound(p, m, params.cprime.phi, params.cprime.delta, c);
  RecordPartI(cert, part, p.space());
  if (!part.ok) {
    cert.verdict = Verdict::kFails;
    cert.AddNote("one-step bound on C fails");
    return cert;
  }

  // ii of C' from the drift: the occupation lower bound of the drift argument.
  const OccupationBound ob = DriftOccupationBound(p, v, b_fn, c, m, params.horizon);
  cert.constants["occupation_n0"] = static_cast<double>(ob.n0);
  cert.constants["occupation_eps"] = ob.eps;
  cert.constants["occupation_bound"] = ob.bound;
  cert.constants["occupation_observed_inf"] = ob.observed_inf;
  cert.constants["occupation_bound_satisfied"] = ob.satisfied ? 1.0 : 0.0;
  if (!ob.satisfied) cert.AddNote("observed occupation fell below the drift lower bound");
  const bool ii_ok = ob.observed_inf > 1e-14 * total;

  cert.verdict = d_ok && ii_ok ? Verdict::kHolds : Verdict::kFails;
  if (!cert.holds()) return cert;

  AlmostInvarianceParams cp = params.cprime;
  cp.horizon = params.horizon;
  cp.n0 = std::max<unsigned long>(1, 2 * ob.n0);
  if (cp.n0 > cp.horizon) cp.horizon = cp.n0;
  Certificate cprime = CheckAssumptionCPrime(p, m, cp, c);
  cert.attached.push_back(cprime);

  const Measure mr = ResolventImage(p, m);
  const InvariantResult inv = SolveCesaroAdjoint(p, mr);
  const DensityConstants dc = AlmostInvarianceFromDensity(mr, inv.nu);
  cert.constants["ai_c"] = dc.c;
  cert.constants["ai_delta"] = dc.delta;
  cert.constants["ai_gamma"] = dc.gamma;
  if (inv.is_zero() || !(dc.delta < 1.0)) {
    cert.AddNote("no invariant density below m R was found; almost invariance not derived");
    cert.verdict = Verdict::kInconclusive;
    return cert;
  }
  AlmostInvarianceParams ap;
  ap.phi = Phi::Linear(dc.c);
  ap.delta = dc.delta;
  ap.horizon = params.horizon;
  Certificate ai = CheckAlmostInvariant(p, mr, ap);
  ai.AddNote("almost invariance of m R with constants from its invariant density");
  cert.constants["ai_delta_min"] = ai.constant("delta_min");
  cert.attached.push_back(std::move(ai));
  return cert;
}

Certificate CheckLasotaSzarekHalf(const Semigroup& s, const Measure& nu, const StateSet& k,
                                  const std::vector<double>& t_grid, double alpha,
                                  int quad_steps) {
  RequireSameSpace(s.space(), nu.space(), "CheckLasotaSzarekHalf");
  RequireSameSpace(s.space(), k.space(), "CheckLasotaSzarekHalf");
  if (!nu.is_probability(1e-9)) throw Error("nu must be a probability");
  if (t_grid.empty()) throw Error("time grid is empty");
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  Certificate cert = MakeCertificate(ConditionId::kLasotaSzarekHalf);
  std::vector<double> occ;
  double sup = -kInf;
  double sup_t = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw Error("times must be positive");
    const double o = KbMeasure(s, nu, t, quad_steps).mass_of(k);
    occ.push_back(o);
    if (o > sup) {
      sup = o;
      sup_t = t;
    }
  }
  cert.series["t_grid"] = t_grid;
  cert.series["occupation"] = occ;
  cert.constants["sup_occupation"] = sup;
  cert.constants["sup_t"] = sup_t;
  cert.constants["alpha"] = alpha;

  const Kernel pi = CesaroLimit(s.Skeleton());
  const Measure limit = Push(nu, pi);
  const double limit_k = limit.mass_of(k);
  cert.constants["limit_occupation"] = limit_k;
  cert.verdict = sup > 0.5 + 1e-12 ? Verdict::kHolds : Verdict::kFails;
  if (!cert.holds()) {
    Witness w;
    w.set = Labels(s.space(), k.members());
    w.description = "occupation of K never exceeds 1/2 on the grid";
    cert.witness = w;
    return cert;
  }
  if (!(limit_k > 0.5 + 1e-12)) {
    cert.AddNote("the grid sup exceeds 1/2 but the long-run occupation does not; the "
                 "almost invariance conclusion is not derived");
    return cert;
  }
  // mu_hat: the long-run occupation restricted to K.
  const Measure mu_hat = limit.restricted_to(k);
  const Measure m = Push(mu_hat, ResolventOf(s, alpha).scaled);
  AlmostInvarianceParams params;
  params.phi = Phi::Linear(1.0);
  params.delta = 1.0 / (2.0 * m.mass());
  cert.constants["m_mass"] = m.mass();
  cert.constants["delta"] = params.delta;
  Certificate ai = CheckAlmostInvariant(s.Skeleton(), m, params);
  ai.AddNote(s.is_discrete() ? "checked on P" : "checked on the uniformized kernel, which covers "
                                                "every P_t");
  cert.attached.push_back(std::move(ai));
  return cert;
}

LpNorm LpOperatorNorm(const Matrix& t, const Vector& m, double p, int max_iter, double tol) {
  if (t.rows() != t.cols() || t.rows() != m.size()) throw Error("shape mismatch in L^p norm");
  if ((m.array() <= 0.0).any()) throw Error("L^p norm needs a measure with full support");
  if ((t.array() < 0.0).any()) throw Error("L^p norm expects a nonnegative matrix");
  if (!(p >= 1.0)) throw Error("p must be >= 1");
  LpNorm out;
  if (std::isinf(p)) {
    out.value = t.rowwise().sum().maxCoeff();
    return out;
  }
  if (p == 1.0) {
    // max_a sum_x m(x) T(x, a) / m(a)
    out.value = (m.asDiagonal() * t).colwise().sum().cwiseQuotient(m.transpose()).maxCoeff();
    return out;
  }
  const Vector d = m.array().pow(1.0 / p);
  const Matrix a = d.asDiagonal() * t * d.cwiseInverse().asDiagonal();
  const double q = p / (p - 1.0);
  auto pnorm = [p](const Vector& x) { return std::pow(x.array().pow(p).sum(), 1.0 / p); };
  Vector x = Vector::Ones(a.rows());
  x /= pnorm(x);
  double est = pnorm(a * x);
  out.converged = false;
  for (int it = 1; it <= max_iter; ++it) {
    const Vector y = a * x;
    const Vector z = a.transpose() * y.array().pow(p - 1.0).matrix();
    if (z.maxCoeff() <= 0.0) {
      out.value = 0.0;
      out.converged = true;
      out.iterations = it;
      return out;
    }
    Vector nx = z.array().pow(q - 1.0).matrix();
    nx /= pnorm(nx);
    const double next = pnorm(a * nx);
    x = nx;
    out.iterations = it;
    if (std::abs(next - est) <= tol * std::max(1.0, next)) {
      est = std::max(est, next);
      out.converged = true;
      break;
    }
    est = std::max(est, next);
  }
  out.value = est;
  return out;
}

Certificate CheckUniformBoundLp(const Semigroup& s, const Measure& m, double p,
                                const std::vector<double>& alphas) {
  RequireSameSpace(s.space(), m.space(), "CheckUniformBoundLp");
  if (alphas.empty()) throw Error("alpha grid is empty");
  if (m.support().size() != m.size()) throw Error("uniform L^p bound needs m with full support");
  Certificate cert = MakeCertificate(ConditionId::kUniformBoundLp);
  std::vector<double> norms;
  bool converged = true;
  double sup = 0.0;
  for (double alpha : alphas) {
    const LpNorm n = LpOperatorNorm(ResolventOf(s, alpha).scaled.matrix(), m.weights(), p);
    norms.push_back(n.value);
    converged = converged && n.converged;
    sup = std::max(sup, n.value);
  }
  cert.series["alphas"] = alphas;
  cert.series["norms"] = norms;
  cert.constants["p"] = p;
  cert.constants["M"] = sup;
  if (!converged) {
    cert.verdict = Verdict::kInconclusive;
    cert.AddNote("power iteration did not converge");
    return cert;
  }
  cert.verdict = std::isfinite(sup) ? Verdict::kHolds : Verdict::kFails;
  if (!cert.holds()) return cert;
  if (std::isinf(p)) {
    cert.AddNote("p = inf gives no vanishing bound in m(A); conclusion not attached");
    return cert;
  }
  // Hoelder: m(alpha R_alpha 1_A) <= m(E)^{(p-1)/p} M m(A)^{1/p}.
  AlmostInvarianceParams params;
  params.phi = Phi::Power(std::pow(m.mass(), (p - 1.0) / p) * sup, 1.0, 1.0, p);
  params.delta = 0.0;
  cert.attached.push_back(CheckResolventAlmostInvariant(s, m, params, alphas));
  return cert;
}

Certificate CheckAuxIndexTransfer(const Semigroup& s, const Measure& mu, double alpha,
                                  const std::vector<double>& grid, int quad_steps) {
  RequireSameSpace(s.space(), mu.space(), "CheckAuxIndexTransfer");
  if (s.is_discrete()) throw Error("the index transfer check is for continuous semigroups");
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  if (grid.empty()) throw Error("time grid is empty");
  Certificate cert = MakeCertificate(ConditionId::kAuxIndexTransfer);
  const Measure m = AuxiliaryMeasure(s, mu, alpha);
  std::vector<Vector> rows;
  std::vector<long long> tags;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back(KbMeasure(s, mu, grid[i], quad_steps).weights());
    tags.push_back(static_cast<long long>(i + 1));
  }
  rows.push_back(Push(mu, CesaroLimit(s.Skeleton())).weights());
  tags.push_back(0);
  const IndexProfile occ =
      IndexFromAverages(rows, tags, m, DefaultEpsilonGrid(m), IndexMethod::kExact);
  // The smallest eps of the default grid lies below every positive atom of m,
  // so the crisp value there is the eps -> 0 limit.
  const double c_tilde = occ.crisp.back();
  cert.constants["c_tilde"] = c_tilde;
  cert.constants["alpha"] = alpha;
  cert.constants["m_mass"] = m.mass();
  cert.series["grid"] = grid;
  cert.series["occupation_profile"] = occ.crisp;
  if (c_tilde < 1.0) {
    const double t0 = 2.0 / (alpha * alpha * (1.0 - c_tilde));
    cert.constants["t0_shifted"] = t0;
    cert.constants["index_bound"] = c_tilde / alpha + 1.0 / (alpha * alpha * t0);
  }
  cert.verdict = c_tilde < alpha ? Verdict::kHolds : Verdict::kFails;
  if (!cert.holds()) return cert;
  const unsigned long horizon =
      std::max<unsigned long>(1, static_cast<unsigned long>(std::ceil(grid.back())));
  IndexProfile profile = ComputeIndexProfile(s, m, DefaultEpsilonGrid(m), horizon,
                                             IndexMethod::kExact, quad_steps);
  Certificate index = IndexCertificate(profile);
  index.AddNote("index of m = mu R_alpha");
  cert.attached.push_back(std::move(index));
  return cert;
}

}  // namespace ergocert
