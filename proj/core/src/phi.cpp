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


#include "ergocert/phi.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ergocert/kernel.hpp"

namespace ergocert {

Phi Phi::Linear(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error("linear phi needs a finite slope c >= 0");
  Phi phi;
  phi.family_ = Family::kLinear;
  phi.c_ = c;
  return phi;
}

Phi Phi::Power(double b, double M, double a, double p) {
  if (!(b >= 0.0) || !(M >= 0.0) || !(a > 0.0) || !(p >= 1.0) || !std::isfinite(b) ||
      !std::isfinite(M) || !std::isfinite(a) || !std::isfinite(p)) {
    throw Error("power phi needs b >= 0, M >= 0 finite, a > 0 and p >= 1");
  }
  Phi phi;
  phi.family_ = Family::kPower;
  phi.b_ = b;
  phi.m_ = M;
  phi.a_ = a;
  phi.p_ = p;
  return phi;
}

Phi Phi::Table(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw Error("phi table needs at least one knot");
  double prev_t = 0.0, prev_y = 0.0;
  double prev_slope = std::numeric_limits<double>::infinity();
  for (const auto& [t, y] : knots) {
    if (!(t > prev_t) || !std::isfinite(t) || !std::isfinite(y)) {
      throw Error("phi table knots must have strictly increasing positive t");
    }
    const double slope = (y - prev_y) / (t - prev_t);
    if (slope < 0.0) throw Error("phi table must be nondecreasing");
    if (slope > prev_slope * (1.0 + 1e-12) + 1e-15) throw Error("phi table must be concave");
    prev_slope = slope;
    prev_t = t;
    prev_y = y;
  }
  Phi phi;
  phi.family_ = Family::kTable;
  phi.knots_ = std::move(knots);
  return phi;
}

double Phi::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (family_) {
    case Family::kLinear:
      return c_ * t;
    case Family::kPower:
      return b_ * std::pow(m_ * t / a_, 1.0 / p_);
    case Family::kTable: {
      double prev_t = 0.0, prev_y = 0.0;
      for (const auto& [kt, ky] : knots_) {
        if (t <= kt) return prev_y + (ky - prev_y) * (t - prev_t) / (kt - prev_t);
        prev_t = kt;
        prev_y = ky;
      }
      return prev_y;
    }
  }
  return 0.0;
}

double Phi::Inverse(double y) const {
  if (!(y >= 0.0)) throw Error("phi inverse needs a nonnegative argument");
  if (y == 0.0) return 0.0;
  switch (family_) {
    case Family::kLinear:
      if (c_ <= 0.0) throw Error("1 - delta is outside the range of phi = 0");
      return y / c_;
    case Family::kPower:
      if (b_ <= 0.0 || m_ <= 0.0) throw Error("1 - delta is outside the range of phi = 0");
      return a_ * std::pow(y / b_, p_) / m_;
    case Family::kTable: {
      double prev_t = 0.0, prev_y = 0.0;
      for (const auto& [kt, ky] : knots_) {
        if (y <= ky && ky > prev_y) return prev_t + (kt - prev_t) * (y - prev_y) / (ky - prev_y);
        prev_t = kt;
        prev_y = ky;
      }
      throw Error("1 - delta is outside the range of the phi table");
    }
  }
  return 0.0;
}

Phi Phi::Scaled(double factor) const {
  if (!(factor >= 0.0)) throw Error("phi scale factor must be nonnegative");
  switch (family_) {
    case Family::kLinear:
      return Linear(c_ * factor);
    case Family::kPower:
      return Power(b_ * factor, m_, a_, p_);
    case Family::kTable: {
      auto k = knots_;
      for (auto& knot : k) knot.second *= factor;
      return Table(std::move(k));
    }
  }
  return *this;
}

std::vector<std::pair<std::string, double>> Phi::Parameters() const {
  switch (family_) {
    case Family::kLinear:
      return {{"c", c_}};
    case Family::kPower:
      return {{"b", b_}, {"M", m_}, {"a", a_}, {"p", p_}};
    case Family::kTable:
      return {{"knots", static_cast<double>(knots_.size())}};
  }
  return {};
}

std::string Phi::Describe() const {
  std::ostringstream os;
  os.precision(6);
  switch (family_) {
    case Family::kLinear:
      os << "phi(t) = " << c_ << " t";
      break;
    case Family::kPower:
      os << "phi(t) = " << b_ << " (" << m_ << " t / " << a_ << ")^(1/" << p_ << ")";
      break;
    case Family::kTable:
      os << "piecewise linear phi with " << knots_.size() << " knots";
      break;
  }
  return os.str();
}

double ClassCountBound(double total_mass, const Phi& phi, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw Error("delta must lie in [0, 1)");
  const double t = phi.Inverse(1.0 - delta);
  if (!(t > 0.0)) throw Error("phi^{-1}(1 - delta) must be positive");
  return total_mass / t;
}

}  // namespace ergocert
