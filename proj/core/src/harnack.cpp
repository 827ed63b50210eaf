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


#include "ergocert/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ergocert/almost_invariance.hpp"
#include "ergocert/drift.hpp"
#include "ergocert/ergodic.hpp"
#include "ergocert/harris.hpp"
#include "ergocert/semigroup.hpp"
#include "ergocert/solver.hpp"

namespace ergocert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireExponent(double exponent) {
  if (!(exponent > 1.0) || !std::isfinite(exponent)) throw Error("Harnack exponent must be > 1");
}

struct HarnackMax {
  double value = 1.0;
  std::optional<StateIndex> worst;
};

// max_{x in C} M(z0 -> x).
HarnackMax MaxOverSet(const Kernel& p, const StateSet& c, StateIndex z0, double exponent) {
  HarnackMax out;
  for (StateIndex x : c.members()) {
    const double m = ComputeHarnackConstant(p, z0, x, exponent).value;
    if (!out.worst || m > out.value) {
      out.value = m;
      out.worst = x;
    }
  }
  return out;
}

// Pointwise PV <= gamma V + c on [V < inf]; returns the worst violating state.
std::optional<StateIndex> DriftViolation(const Kernel& p, const StateFn& v, double gamma,
                                         double c, double* max_violation) {
  const StateFn pv = Apply(p, StateFn(v.space(), v.values(), true));
  std::optional<StateIndex> worst;
  double worst_v = -kInf;
  for (StateIndex x = 0; x < v.size(); ++x) {
    if (!std::isfinite(v(x))) continue;
    const double rhs = gamma * v(x) + c;
    const double viol = pv(x) - rhs;
    worst_v = std::max(worst_v, viol);
    if (viol > kCheckTolerance * std::max(1.0, std::abs(rhs)) &&
        (!worst || viol >= pv(*worst) - gamma * v(*worst) - c)) {
      worst = x;
    }
  }
  if (max_violation) *max_violation = worst_v == -kInf ? 0.0 : worst_v;
  return worst;
}

Witness StateWitness(const StateSpace& space, StateIndex x, std::string description) {
  Witness w;
  w.state = space.label(x);
  w.description = std::move(description);
  return w;
}

// Solver on m R; attaches nothing, records constants and returns nu.
InvariantResult SolveOnResolvent(Certificate& cert, const Kernel& p, const Measure& m) {
  const Measure mr = AuxiliaryMeasure(p, m.normalized());
  InvariantResult inv = SolveCesaroAdjoint(p, mr);
  cert.constants["solver_mass"] = inv.nu.mass();
  if (!inv.is_zero()) {
    const Measure nu = inv.nu.normalized();
    cert.constants["solver_residual"] = (Push(nu, p).weights() - nu.weights()).lpNorm<1>();
  }
  return inv;
}

}  // namespace

HarnackConstant ComputeHarnackConstant(const Kernel& p, StateIndex x, StateIndex y,
                                       double exponent) {
  RequireExponent(exponent);
  HarnackConstant out;
  out.p = exponent;
  out.x = x;
  out.y = y;
  const double q = exponent / (exponent - 1.0);
  double sum = 0.0;
  for (StateIndex a = 0; a < p.size(); ++a) {
    const double py = p(y, a);
    if (py <= 0.0) continue;
    const double px = p(x, a);
    if (px <= 0.0) {
      out.value = kInf;
      return out;
    }
    // P(y,a)^q P(x,a)^{1-q}, with 1 - q = -1/(p-1).
    sum += py * std::pow(py / px, q - 1.0);
  }
  out.value = std::pow(sum, exponent - 1.0);
  return out;
}

Vector HarnackMaximizer(const Kernel& p, StateIndex x, StateIndex y, double exponent) {
  RequireExponent(exponent);
  Vector f = Vector::Zero(static_cast<Eigen::Index>(p.size()));
  for (StateIndex a = 0; a < p.size(); ++a) {
    if (p(x, a) > 0.0) {
      f(static_cast<Eigen::Index>(a)) = std::pow(p(y, a) / p(x, a), 1.0 / (exponent - 1.0));
    }
  }
  return f;
}

double HarnackRatio(const Kernel& p, StateIndex x, StateIndex y, double exponent,
                    const Vector& f) {
  if ((f.array() < 0.0).any()) throw Error("Harnack ratio needs f >= 0");
  const Vector fp = f.array().pow(exponent).matrix();
  const double num = std::pow(p.matrix().row(static_cast<Eigen::Index>(y)).dot(f), exponent);
  const double den = p.matrix().row(static_cast<Eigen::Index>(x)).dot(fp);
  if (den <= 0.0) return num > 0.0 ? kInf : 0.0;
  return num / den;
}

StateIndex DefaultReference(const StateFn& v, const StateSet& c) {
  if (c.empty()) throw Error("reference state needs a nonempty set");
  StateIndex best = c.members().front();
  for (StateIndex x : c.members()) {
    if (v(x) < v(best)) best = x;
  }
  return best;
}

Certificate CheckHarnackLyapunov(const Kernel& p, const StateFn& v, double gamma, double c,
                                 const StateSet& set, StateIndex z0, double exponent) {
  RequireSameSpace(p.space(), v.space(), "CheckHarnackLyapunov");
  RequireSameSpace(p.space(), set.space(), "CheckHarnackLyapunov");
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error("gamma must lie in (0, 1)");
  RequireExponent(exponent);
  if (z0 >= p.size()) throw Error("reference state out of range");
  if (set.empty()) throw Error("Harnack set must be nonempty");
  Certificate cert = MakeCertificate(ConditionId::kHarnackLyapunov);
  cert.constants["gamma"] = gamma;
  cert.constants["c"] = c;
  cert.constants["p"] = exponent;
  cert.constants["z0"] = static_cast<double>(z0);
  double max_violation = 0.0;
  const auto bad = DriftViolation(p, v, gamma, c, &max_violation);
  cert.constants["max_drift_violation"] = max_violation;
  const HarnackMax hm = MaxOverSet(p, set, z0, exponent);
  cert.constants["M_star"] = hm.value;
  std::vector<double> per_state;
  for (StateIndex x : set.members()) {
    per_state.push_back(ComputeHarnackConstant(p, z0, x, exponent).value);
  }
  cert.series["M"] = per_state;
  if (bad) {
    cert.verdict = Verdict::kFails;
    cert.witness = StateWitness(p.space(), *bad, "PV <= gamma V + c fails here");
  } else if (!std::isfinite(hm.value)) {
    cert.verdict = Verdict::kFails;
    cert.witness = StateWitness(p.space(), *hm.worst,
                                "row leaves the support of the reference row; M is infinite");
  } else {
    cert.verdict = Verdict::kHolds;
  }
  cert.AddNote("reference state " + p.space().label(z0));
  return cert;
}

Certificate CertifyHarnackPipeline(const Kernel& p, const StateFn& v, double gamma, double c,
                                   const StateSet& set, StateIndex z0, double exponent) {
  Certificate cert = MakeCertificate(ConditionId::kHarnackPipeline);
  Certificate hl = CheckHarnackLyapunov(p, v, gamma, c, set, z0, exponent);
  const double m_star = hl.constant("M_star");
  cert.constants["M_star"] = m_star;
  cert.constants["p"] = exponent;
  if (!hl.holds()) {
    const bool drift_failed = hl.constant("max_drift_violation") >
                              kCheckTolerance * std::max(1.0, std::abs(c));
    cert.verdict = std::isfinite(m_star) && drift_failed ? Verdict::kInconclusive
                                                         : Verdict::kFails;
    cert.witness = hl.witness;
    cert.attached.push_back(std::move(hl));
    return cert;
  }
  cert.attached.push_back(std::move(hl));

  const Measure m = Push(Measure::Dirac(p.space(), z0), p);
  AlmostInvarianceParams params;
  params.phi = Phi::Power(1.0, m_star, 1.0, exponent);
  params.delta = 0.0;
  Certificate cprime = CheckAssumptionCPrime(p, m, params, set);
  const bool cprime_ok = cprime.holds();
  cert.constants["set_sup"] = cprime.constant("set_sup");
  cert.attached.push_back(std::move(cprime));
  if (!cprime_ok) {
    cert.verdict = Verdict::kFails;
    cert.AddNote("the one-step bound built from M* did not verify");
    return cert;
  }
  const InvariantResult inv = SolveOnResolvent(cert, p, m);
  if (inv.is_zero()) {
    cert.verdict = Verdict::kFails;
    cert.AddNote("solver returned zero below m R");
    return cert;
  }
  cert.verdict = Verdict::kHolds;
  if (p.is_markovian()) {
    const auto eig = SolveEigen(p);
    cert.constants["class_count"] = static_cast<double>(eig.size());
    if (eig.size() == 1) {
      cert.constants["tv_to_spectral"] = TotalVariation(inv.nu.normalized(), eig.front().nu);
    }
  }
  return cert;
}

double PerturbationSpec::a() const { return rho.values().minCoeff(); }
double PerturbationSpec::b() const { return rho.values().maxCoeff(); }

Kernel Perturb(const Kernel& p, const PerturbationSpec& spec) {
  RequireSameSpace(p.space(), spec.rho.space(), "Perturb");
  RequireSameSpace(p.space(), spec.q.space(), "Perturb");
  if (!(spec.a() > 0.0) || !(spec.b() <= 1.0)) throw Error("rho must lie in (0, 1]");
  const Vector& r = spec.rho.values();
  return ConvexCombination(p, spec.q, std::span<const double>(r.data(), p.size()));
}

Certificate CertifyPerturbedHarnack(const Kernel& p, const StateFn& v,
                                    const PerturbationSpec& spec,
                                    const PerturbedHarnackParams& params) {
  RequireSameSpace(p.space(), v.space(), "CertifyPerturbedHarnack");
  RequireExponent(params.exponent);
  if (!(params.gamma > 0.0 && params.gamma < 1.0)) throw Error("gamma must lie in (0, 1)");
  if (!(params.l >= 0.0)) throw Error("l must be nonnegative");
  Certificate cert = MakeCertificate(ConditionId::kPerturbedHarnackLyapunov);
  const double a = spec.a();
  const double b = spec.b();
  const Kernel pbar = Perturb(p, spec);
  cert.constants["a"] = a;
  cert.constants["b"] = b;
  cert.constants["gamma"] = params.gamma;
  cert.constants["c"] = params.c;
  cert.constants["l"] = params.l;
  cert.constants["eta"] = params.eta;
  cert.constants["r"] = params.r;
  const double threshold = a < 1.0 ? (1.0 - b * params.gamma) / (1.0 - a) : kInf;
  cert.constants["threshold"] = threshold;
  if (!(params.l < threshold)) {
    cert.verdict = Verdict::kFails;
    Witness w;
    w.description = "l = " + std::to_string(params.l) +
                    " is not below (1 - b gamma) / (1 - a) = " + std::to_string(threshold);
    cert.witness = w;
    return cert;
  }
  double viol = 0.0;
  if (auto bad = DriftViolation(p, v, params.gamma, params.c, &viol)) {
    cert.verdict = Verdict::kFails;
    cert.constants["p_drift_violation"] = viol;
    cert.witness = StateWitness(p.space(), *bad, "PV <= gamma V + c fails here");
    return cert;
  }
  if (auto bad = DriftViolation(spec.q, v, params.l, params.eta, &viol)) {
    cert.verdict = Verdict::kFails;
    cert.constants["q_drift_violation"] = viol;
    cert.witness = StateWitness(p.space(), *bad, "QV <= l V + eta fails here");
    return cert;
  }
  const double gbar = b * params.gamma + (1.0 - a) * params.l;
  const double cbar = b * params.c + (1.0 - a) * params.eta;
  cert.constants["composite_gamma"] = gbar;
  cert.constants["composite_c"] = cbar;
  if (DriftViolation(pbar, v, gbar, cbar, &viol)) {
    // The composite drift follows from the two checked drifts; reaching this
    // branch means V took negative values or the inputs were inconsistent.
    cert.verdict = Verdict::kFails;
    cert.constants["composite_drift_violation"] = viol;
    cert.AddNote("composite drift of the perturbed kernel failed");
    return cert;
  }
  const StateSet set = v.sublevel_set(params.r);
  if (set.empty()) {
    cert.verdict = Verdict::kFails;
    cert.AddNote("[V <= r] is empty");
    return cert;
  }
  const StateIndex z0 = params.z0.value_or(DefaultReference(v, set));
  cert.constants["z0"] = static_cast<double>(z0);
  const HarnackMax hm = MaxOverSet(p, set, z0, params.exponent);
  cert.constants["M_star"] = hm.value;
  if (!std::isfinite(hm.value)) {
    cert.verdict = Verdict::kFails;
    cert.witness = StateWitness(p.space(), *hm.worst,
                                "row leaves the support of the reference row; M is infinite");
    return cert;
  }
  const Measure m = Push(Measure::Dirac(p.space(), z0), pbar);
  AlmostInvarianceParams cp;
  cp.phi = Phi::Power(b, hm.value, a, params.exponent);
  cp.delta = 1.0 - a;
  if (!(cp.delta < 1.0)) throw Error("a must be positive");
  Certificate cprime = CheckAssumptionCPrime(pbar, m, cp, set);
  const bool ok = cprime.holds();
  cert.constants["set_sup"] = cprime.constant("set_sup");
  cert.attached.push_back(std::move(cprime));
  if (!ok) {
    cert.verdict = Verdict::kFails;
    cert.AddNote("the one-step bound for the perturbed kernel did not verify");
    return cert;
  }
  const InvariantResult inv = SolveOnResolvent(cert, pbar, m);
  cert.verdict = inv.is_zero() ? Verdict::kFails : Verdict::kHolds;
  if (inv.is_zero()) cert.AddNote("solver returned zero below m R");
  return cert;
}

LazyAtomsReport DiagnoseLazyAtoms(const Kernel& p, const StateFn& rho, const StateSet& c,
                                  const StateFn& v, unsigned long max_power) {
  RequireSameSpace(p.space(), rho.space(), "DiagnoseLazyAtoms");
  RequireSameSpace(p.space(), c.space(), "DiagnoseLazyAtoms");
  LazyAtomsReport out;
  out.max_power = max_power;
  PerturbationSpec spec{rho, Kernel::Identity(p.space())};
  const Kernel lazy = Perturb(p, spec);
  out.one_minus_b = 1.0 - spec.b();
  out.max_atom = p.matrix().maxCoeff();
  const std::size_t n = p.size();
  std::vector<char> exact(n, 0);
  for (StateIndex y = 0; y < n; ++y) {
    exact[y] = p.matrix().col(static_cast<Eigen::Index>(y)).maxCoeff() <= 0.0;
    out.exact_atoms += exact[y] ? 1 : 0;
  }
  out.diagonal_slack = kInf;
  Matrix pow = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (unsigned long k = 1; k <= max_power; ++k) {
    pow = pow * lazy.matrix();
    for (StateIndex y = 0; y < n; ++y) {
      const double closed = std::pow(1.0 - rho(y), static_cast<double>(k));
      const auto yi = static_cast<Eigen::Index>(y);
      out.diagonal_slack = std::min(out.diagonal_slack, pow(yi, yi) - closed);
      if (!exact[y]) continue;
      for (StateIndex x = 0; x < n; ++x) {
        const double target = x == y ? closed : 0.0;
        out.closed_form_error =
            std::max(out.closed_form_error, std::abs(pow(static_cast<Eigen::Index>(x), yi) - target));
      }
    }
  }
  if (max_power == 0) out.diagonal_slack = 0.0;
  std::vector<StateIndex> order = c.members();
  std::stable_sort(order.begin(), order.end(), [&](StateIndex s, StateIndex t) { return v(s) < v(t); });
  for (std::size_t k = 0; k < order.size(); ++k) {
    double sup = 0.0;
    for (StateIndex x : c.members()) {
      double mass = 0.0;
      for (std::size_t j = k; j < order.size(); ++j) mass += lazy(x, order[j]);
      sup = std::max(sup, mass);
    }
    out.tail_sups.push_back(sup);
  }
  out.notes =
      "a finite space always has atoms, so non-atomicity holds only approximately "
      "(max_atom -> 0 on fine grids); the diagnostic is illustrative";
  return out;
}

}  // namespace ergocert
