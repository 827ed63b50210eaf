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


#include "ergocert/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "ergocert/ergodic.hpp"

namespace ergocert {

namespace {

void RequireInvariant(const Kernel& p, const Measure& m) {
  RequireSameSpace(p.space(), m.space(), "WeightedGapNorm");
  if (!m.is_probability(1e-9)) throw Error("m must be a probability");
  const double residual = (Push(m, p).weights() - m.weights()).lpNorm<1>();
  if (residual > 1e-10) {
    throw Error("m is not invariant for P (residual " + std::to_string(residual) + ")");
  }
}

double GapOf(const Matrix& pn, const Measure& m, const StateFn& v) {
  const Vector w = Vector::Ones(v.values().size()) + v.values();
  double best = 0.0;
  for (Eigen::Index x = 0; x < pn.rows(); ++x) {
    const double s = (pn.row(x).transpose() - m.weights()).cwiseAbs().dot(w);
    best = std::max(best, s / w(x));
  }
  return best;
}

}  // namespace

double WeightedGapNorm(const Kernel& p, const Measure& m, const StateFn& v, unsigned long n) {
  RequireInvariant(p, m);
  RequireSameSpace(p.space(), v.space(), "WeightedGapNorm");
  return GapOf(Power(p, n).matrix(), m, v);
}

std::vector<unsigned long> DefaultDecayGrid() {
  std::vector<unsigned long> ns(256);
  for (unsigned long i = 0; i < 256; ++i) ns[i] = i + 1;
  return ns;
}

DecayReport ComputeDecayReport(const Kernel& p, const Measure& m, const StateFn& v,
                               const std::vector<unsigned long>& ns) {
  RequireInvariant(p, m);
  RequireSameSpace(p.space(), v.space(), "ComputeDecayReport");
  if (v.values().minCoeff() < 0.0 || !v.values().allFinite()) {
    throw Error("V must be finite and nonnegative");
  }
  DecayReport out;
  out.ns = ns;
  std::sort(out.ns.begin(), out.ns.end());
  out.ns.erase(std::unique(out.ns.begin(), out.ns.end()), out.ns.end());
  if (out.ns.empty()) throw Error("decay grid is empty");
  Matrix pn = Matrix::Identity(p.matrix().rows(), p.matrix().cols());
  unsigned long at = 0;
  for (unsigned long n : out.ns) {
    pn = pn * Power(p, n - at).matrix();
    at = n;
    out.norms.push_back(GapOf(pn, m, v));
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < out.ns.size(); ++i) {
    if (out.norms[i] > kDecayFloor) {
      xs.push_back(static_cast<double>(out.ns[i]));
      ys.push_back(std::log(out.norms[i]));
    }
  }
  out.fit_points = xs.size();
  if (xs.size() < 2) {
    out.exact_convergence = out.norms.back() <= kDecayFloor;
    if (out.exact_convergence) {
      out.fitted_gamma = 0.0;
      out.fitted_c = xs.empty() ? 0.0 : std::exp(ys.front());
      out.envelope_c = out.fitted_c;
      out.r2 = 1.0;
      out.geometric = true;
      out.notes = "norms vanish within the grid; decay is exact rather than fitted";
    } else {
      out.notes = "too few points above the floor for a fit";
    }
    return out;
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss_res += r * r;
  }
  // A flat series carries no decay information at all.
  out.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 0.0;
  out.fitted_gamma = std::exp(slope);
  out.fitted_c = std::exp(intercept);
  for (std::size_t i = 0; i < out.ns.size(); ++i) {
    out.envelope_c = std::max(
        out.envelope_c, out.norms[i] / std::pow(out.fitted_gamma, static_cast<double>(out.ns[i])));
  }
  out.geometric = out.r2 >= kDecayR2 && out.fitted_gamma < 1.0 - 1e-9;
  if (!out.geometric) out.notes = "fit rejected: no geometric decay";
  if (out.fit_points < out.ns.size()) {
    if (!out.notes.empty()) out.notes += "; ";
    out.notes += "points below the floor excluded from the fit";
  }
  return out;
}

CesaroCheck CesaroLimitCheck(const Kernel& p, StateIndex x, unsigned long n) {
  if (!p.is_markovian()) throw Error("Cesaro limit check needs a markovian kernel");
  if (n < 1) throw Error("N must be >= 1");
  if (x >= p.size()) throw Error("state out of range");
  const auto d = static_cast<Eigen::Index>(p.size());
  Vector row = Vector::Zero(d);
  row(static_cast<Eigen::Index>(x)) = 1.0;
  Vector acc = Vector::Zero(d);
  const Matrix pt = p.matrix().transpose();
  for (unsigned long k = 1; k <= n; ++k) {
    row = pt * row;
    acc += row;
  }
  acc /= static_cast<double>(n);
  Measure average(p.space(), acc.cwiseMax(0.0));
  Measure predicted = CesaroLimit(p).row(x);
  const double residual = TotalVariation(average, predicted);
  return {std::move(average), std::move(predicted), residual};
}

}  // namespace ergocert
