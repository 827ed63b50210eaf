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


// Concave profile functions phi used in almost-invariance bounds
// m(P 1_A) <= phi(m(A)) + delta m(E).

#ifndef ERGOCERT_PHI_HPP_
#define ERGOCERT_PHI_HPP_

#include <string>
#include <utility>
#include <vector>

namespace ergocert {

class Phi {
 public:
  enum class Family { kLinear, kPower, kTable };

  // phi(t) = c t.
  static Phi Linear(double c);
  // phi(t) = b (M t / a)^{1/p}, p >= 1.
  static Phi Power(double b, double M, double a, double p);
  // Piecewise linear through (0,0) and the given knots (t strictly
  // increasing, t > 0), constant after the last knot. Rejects tables that are
  // decreasing or not concave.
  static Phi Table(std::vector<std::pair<double, double>> knots);

  Family family() const { return family_; }
  bool is_linear() const { return family_ == Family::kLinear; }
  // Slope of the linear family.
  double slope() const { return c_; }

  double operator()(double t) const;
  // Smallest t with phi(t) >= y. Throws Error when y exceeds the range of
  // phi or y < 0.
  double Inverse(double y) const;
  // factor * phi.
  Phi Scaled(double factor) const;

  // Parameters by name, for reports.
  std::vector<std::pair<std::string, double>> Parameters() const;
  std::string Describe() const;

  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  Family family_ = Family::kLinear;
  double c_ = 0.0;
  double b_ = 0.0, m_ = 0.0, a_ = 1.0, p_ = 1.0;
  std::vector<std::pair<double, double>> knots_;
};

// m(E) / phi^{-1}(1 - delta): upper bound on the number of mutually singular
// invariant probabilities when phi bounds P uniformly on the whole space.
double ClassCountBound(double total_mass, const Phi& phi, double delta);

}  // namespace ergocert

#endif  // ERGOCERT_PHI_HPP_
