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


#include "ergocert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "ergocert/worst_set.hpp"

namespace ergocert {

std::string_view ToString(SolveMethod method) {
  switch (method) {
    case SolveMethod::kEigen:
      return "eigen";
    case SolveMethod::kCesaroAdjoint:
      return "cesaro_adjoint";
    case SolveMethod::kGeneratorNullspace:
      return "generator_nullspace";
  }
  return "eigen";
}

namespace {

double Residual(const Measure& nu, const Kernel& p) {
  return (Push(nu, p).weights() - nu.weights()).lpNorm<1>();
}

InvariantResult FromMeasure(const Measure& nu, const Kernel& p, SolveMethod method) {
  InvariantResult r{StateFn(nu.space(), nu.weights()), nu, Residual(nu, p), method, 0, true,
                    0.0, 0.0, {}, {}, {}};
  return r;
}

// gcd of cycle lengths inside one strongly connected component.
unsigned long ComponentPeriod(const Matrix& p, const std::vector<StateIndex>& comp) {
  std::vector<long> level(static_cast<std::size_t>(p.rows()), -1);
  std::vector<char> inside(static_cast<std::size_t>(p.rows()), 0);
  for (StateIndex x : comp) inside[x] = 1;
  std::vector<StateIndex> queue{comp.front()};
  level[comp.front()] = 0;
  long g = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateIndex u = queue[head];
    for (StateIndex v : comp) {
      if (p(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) <= 0.0) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      } else {
        g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
      }
    }
  }
  return g == 0 ? 1 : static_cast<unsigned long>(g);
}

// lcm of the periods of every component, 1 when it would exceed cap.
unsigned long GraphPeriod(const Matrix& p, unsigned long cap) {
  unsigned long l = 1;
  for (const auto& comp : StronglyConnectedComponents(p)) {
    l = std::lcm(l, ComponentPeriod(p, comp));
    if (l > cap) return 1;
  }
  return l;
}

double WeightedL1(const Vector& a, const Vector& b, const Vector& m) {
  return (a - b).cwiseAbs().dot(m);
}

}  // namespace

std::vector<InvariantResult> SolveEigen(const Kernel& p) {
  const ErgodicDecomposition d = Decompose(p);
  std::vector<InvariantResult> out;
  for (const Measure& nu : d.class_measures) out.push_back(FromMeasure(nu, p, SolveMethod::kEigen));
  return out;
}

InvariantResult SolveCesaroAdjoint(const Kernel& p, const Measure& m, double tol,
                                   unsigned long max_n) {
  RequireSameSpace(p.space(), m.space(), "SolveCesaroAdjoint");
  const double total = m.mass();
  if (!(total > 0.0)) throw Error("the adjoint solver needs a nonzero measure");
  const Kernel adj = RestrictedAdjoint(p, m);
  const Matrix& a = adj.matrix();
  const Vector& w = m.weights();
  const auto d = static_cast<Eigen::Index>(p.size());

  InvariantResult out{StateFn::Constant(p.space(), 0.0), Measure::Zero(p.space()), 0.0,
                      SolveMethod::kCesaroAdjoint, 0, false, 0.0, 0.0, {}, {}, {}};
  Vector one = Vector::Zero(d);
  for (Eigen::Index x = 0; x < d; ++x) one(x) = w(x) > 0.0 ? 1.0 : 0.0;

  // Start from a multiple of the period so the doubling never splits a cycle.
  unsigned long n = GraphPeriod(a, 10000);
  Vector g = Vector::Zero(d);  // sum_{k<n} A^k 1
  Vector v = one;
  for (unsigned long k = 0; k < n; ++k) {
    g += v;
    v = a * v;
  }
  Matrix an = Power(adj, n).matrix();
  Vector f_prev = g / static_cast<double>(n);
  out.norms.push_back(f_prev.dot(w));
  Vector e_prev;
  bool have_e = false;
  while (n <= max_n / 2) {
    g += an * g;
    n *= 2;
    an = an * an;
    ++out.iterations;
    const Vector f = g / static_cast<double>(n);
    out.norms.push_back(f.dot(w));
    const Vector e = 2.0 * f - f_prev;
    f_prev = f;
    if (have_e) {
      const double diff = WeightedL1(e, e_prev, w);
      out.trajectory.push_back(diff);
      if (diff <= tol * total) {
        e_prev = e;
        out.converged = true;
        break;
      }
    }
    e_prev = e;
    have_e = true;
    if (!an.allFinite()) break;
  }
  if (!have_e) e_prev = f_prev;
  Vector rho = e_prev.cwiseMax(0.0);
  // Transient atoms leave round-off after extrapolation. The cut is on nu,
  // not rho: rho = dnu/dm can span many decades where m is tiny.
  const double floor = 1e-3 * tol * total;
  for (Eigen::Index x = 0; x < d; ++x) {
    if (w(x) <= 0.0 || rho(x) * w(x) < floor) rho(x) = 0.0;
  }
  out.rho = StateFn(p.space(), rho);
  out.nu = Measure(p.space(), rho.cwiseProduct(w));
  out.residual = Residual(out.nu, p);
  const Vector arho = a * rho;
  out.subinvariance_gap = (arho - rho).cwiseMax(0.0).dot(w);
  out.mass_gap = std::abs(arho.dot(w) - rho.dot(w));
  out.notes = "horizon " + std::to_string(n);
  if (!out.converged) out.notes += "; extrapolations did not settle within the horizon cap";
  return out;
}

std::vector<InvariantResult> SolveContinuous(const Semigroup& s) {
  if (s.is_discrete()) throw Error("SolveContinuous needs a continuous semigroup");
  const Kernel skel = s.Skeleton();
  const ErgodicDecomposition d = Decompose(skel);
  std::vector<Resolvent> checks;
  for (double alpha : {0.5, 1.0, 2.0}) checks.push_back(ResolventOf(s, alpha));
  std::vector<InvariantResult> out;
  for (const Measure& nu : d.class_measures) {
    InvariantResult r = FromMeasure(nu, skel, SolveMethod::kGeneratorNullspace);
    const Vector q_res = nu.weights().transpose() * s.generator().rates();
    r.residual = q_res.lpNorm<1>();
    for (const Resolvent& res : checks) r.residual = std::max(r.residual, Residual(nu, res.scaled));
    r.notes = "fixed point of alpha R_alpha checked at alpha = 1/2, 1, 2";
    out.push_back(std::move(r));
  }
  return out;
}

Certificate VerifyCountBound(const Kernel& p, const Measure& m, const Phi& phi, double delta) {
  RequireSameSpace(p.space(), m.space(), "VerifyCountBound");
  Certificate c = MakeCertificate(ConditionId::kClassCountBound);
  c.constants["delta"] = delta;
  double sup = 0.0;
  for (StateIndex x = 0; x < p.size(); ++x) {
    const WorstSet ws = WorstSetSearch(p.row(x), m, phi);
    if (ws.value > sup) sup = ws.value;
    if (ws.value > delta + kCheckTolerance) {
      c.verdict = Verdict::kInconclusive;
      c.constants["one_step_sup"] = ws.value;
      Witness w;
      w.state = p.space().label(x);
      for (StateIndex a : ws.set) w.set.push_back(p.space().label(a));
      w.description = "the one-step bound fails here, so the count bound does not apply";
      c.witness = w;
      return c;
    }
  }
  c.constants["one_step_sup"] = sup;
  double bound = 0.0;
  double t_star = 0.0;
  try {
    bound = ClassCountBound(m.mass(), phi, delta);
    t_star = phi.Inverse(1.0 - delta);
  } catch (const Error& e) {
    c.verdict = Verdict::kInconclusive;
    c.AddNote(e.what());
    return c;
  }
  const ErgodicDecomposition d = Decompose(p);
  c.constants["bound"] = bound;
  c.constants["phi_inverse"] = t_star;
  c.constants["class_count"] = static_cast<double>(d.class_count());
  double min_mass = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> light;
  for (std::size_t k = 0; k < d.class_count(); ++k) {
    const double mk = m.mass_of(d.classes[k]);
    if (mk < min_mass) min_mass = mk;
    if (mk < t_star - 1e-9 && !light) light = k;
  }
  c.constants["min_class_mass"] = min_mass;
  const bool count_ok = static_cast<double>(d.class_count()) <= bound + 1e-9;
  c.verdict = count_ok && !light ? Verdict::kHolds : Verdict::kFails;
  if (light) {
    Witness w;
    for (StateIndex x : d.classes[*light].members()) w.set.push_back(p.space().label(x));
    w.description = "closed class lighter than phi^{-1}(1 - delta)";
    c.witness = w;
  } else if (!count_ok) {
    Witness w;
    w.description = "more closed classes than the bound allows";
    c.witness = w;
  }
  if (std::abs(static_cast<double>(d.class_count()) - bound) <= 1e-9) {
    c.AddNote("class count sits on the bound; tested as <=");
  }
  return c;
}

}  // namespace ergocert
