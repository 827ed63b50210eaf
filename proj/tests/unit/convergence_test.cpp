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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "ergocert/convergence.hpp"
#include "ergocert/drift.hpp"
#include "oracles.hpp"

namespace ergocert {
namespace {

using testing::K;
using testing::M;
using testing::Space;

Measure Stationary(const Kernel& p) {
  // Round-off can leave tiny negatives on steep chains.
  testing::Vec pi = testing::StationaryOracle(testing::ToDense(p.matrix()));
  for (double& x : pi) x = std::max(x, 0.0);
  return Measure(p.space(), Eigen::Map<const Vector>(pi.data(), static_cast<Eigen::Index>(pi.size())));
}

// 0.9 of a reflecting walk (down with probability `down`) plus 0.1 reset to 0.
Kernel ResetWalk(std::size_t n, double down) {
  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    const auto i = static_cast<Eigen::Index>(x);
    rows(i, 0) += 0.1;
    rows(i, x == 0 ? 0 : i - 1) += 0.9 * down;
    rows(i, x + 1 == n ? i : i + 1) += 0.9 * (1.0 - down);
  }
  return Kernel(Space(n), rows);
}

StateFn Geometric(std::size_t n, double base) {
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) v(static_cast<Eigen::Index>(x)) = std::pow(base, static_cast<double>(x));
  return StateFn(Space(n), v);
}

TEST(WeightedGapNormTest, Examples) {
  const Measure m = M(Space(3), {0.2, 0.5, 0.3});
  const Kernel flat = K({{0.2, 0.5, 0.3}, {0.2, 0.5, 0.3}, {0.2, 0.5, 0.3}});
  const StateFn v = testing::F(Space(3), {0, 3, 7});
  for (unsigned long n : {1ul, 2ul, 9ul}) EXPECT_NEAR(WeightedGapNorm(flat, m, v, n), 0.0, 1e-15);
  EXPECT_NEAR(WeightedGapNorm(flat, m, StateFn::Constant(Space(3), 0.0), 0), 2.0 * (1.0 - 0.2), 1e-15);

  // |P^n(x, .) - m|_1 = (4/3) 0.7^n at x = 1.
  const Kernel two = K({{0.9, 0.1}, {0.2, 0.8}});
  const Measure pi = M(Space(2), {2.0 / 3, 1.0 / 3});
  const StateFn zero = StateFn::Constant(Space(2), 0.0);
  for (unsigned long n = 1; n <= 20; ++n) {
    EXPECT_NEAR(WeightedGapNorm(two, pi, zero, n), 4.0 / 3 * std::pow(0.7, double(n)), 1e-14);
  }
  EXPECT_THROW(WeightedGapNorm(two, M(Space(2), {0.5, 0.5}), zero, 1), Error);
}

TEST(DecayReportTest, TwoStateRate) {
  const Kernel two = K({{0.9, 0.1}, {0.2, 0.8}});
  const DecayReport r =
      ComputeDecayReport(two, M(Space(2), {2.0 / 3, 1.0 / 3}), StateFn::Constant(Space(2), 0.0), DefaultDecayGrid());
  EXPECT_TRUE(r.geometric);
  EXPECT_NEAR(r.fitted_gamma, 0.7, 1e-6);
  EXPECT_GE(r.r2, 0.99);
  for (std::size_t i = 0; i < r.ns.size(); ++i) {
    EXPECT_LE(r.norms[i], r.envelope_c * std::pow(r.fitted_gamma, double(r.ns[i])) * (1 + 1e-9));
  }
}

TEST(DecayReportTest, ExactAndPeriodic) {
  const Kernel flat = K({{0.4, 0.6}, {0.4, 0.6}});
  const DecayReport exact =
      ComputeDecayReport(flat, M(Space(2), {0.4, 0.6}), StateFn::Constant(Space(2), 0.0), DefaultDecayGrid());
  EXPECT_TRUE(exact.exact_convergence);

  const Kernel flip = K({{0, 1}, {1, 0}});
  const Measure half = M(Space(2), {0.5, 0.5});
  const DecayReport periodic = ComputeDecayReport(flip, half, StateFn::Constant(Space(2), 0.0), DefaultDecayGrid());
  EXPECT_FALSE(periodic.geometric);
  EXPECT_FALSE(periodic.exact_convergence);
  for (double b : periodic.norms) EXPECT_NEAR(b, 1.0, 1e-15);
  EXPECT_TRUE(CheckSmallness(flip, StateSet::All(Space(2))).fails());
}

TEST(DecayReportTest, ResetWalkPassingAssumptionA) {
  const std::size_t n = 30;
  const Kernel p = ResetWalk(n, 0.7);
  const StateFn v = Geometric(n, 1.3);
  const DriftFit fit = FitGeometricDrift(p, v, 1.0);
  ASSERT_TRUE(CheckAssumptionA(p, v, fit.gamma, fit.b, 2.0 * fit.b / (1.0 - fit.gamma) + 1.0).holds());
  const DecayReport r = ComputeDecayReport(p, Stationary(p), v, DefaultDecayGrid());
  EXPECT_TRUE(r.geometric);
  EXPECT_LT(r.fitted_gamma, 1.0);
  EXPECT_GE(r.r2, 0.99);
}

TEST(CesaroLimitCheckTest, Examples) {
  const Kernel two = K({{0.9, 0.1}, {0.2, 0.8}});
  const CesaroCheck small = CesaroLimitCheck(two, 0, 100);
  const CesaroCheck large = CesaroLimitCheck(two, 0, 10000);
  EXPECT_NEAR(large.predicted(0), 2.0 / 3, 1e-14);
  // TV error (1/N) sum_{k=1}^N (1/3) 0.7^k.
  const auto expected = [](double n) { return (0.7 * (1.0 - std::pow(0.7, n)) / 0.3) / 3.0 / n; };
  EXPECT_NEAR(small.residual, expected(100), 1e-14);
  EXPECT_NEAR(large.residual, expected(10000), 1e-9 * expected(10000));

  const Kernel abs = K({{1, 0, 0}, {0.3, 0.2, 0.5}, {0, 0, 1}});
  const CesaroCheck mix = CesaroLimitCheck(abs, 1, 5000);
  const testing::Vec h = testing::AbsorptionOracle(testing::ToDense(abs.matrix()), {true, false, false});
  EXPECT_NEAR(mix.predicted(0), h[1], 1e-14);
  EXPECT_NEAR(mix.predicted(2), 1.0 - h[1], 1e-14);
  EXPECT_NEAR(mix.predicted(0), 0.375, 1e-14);
  EXPECT_LE(mix.residual, 1e-3);

  const CesaroCheck rec = CesaroLimitCheck(abs, 2, 10);
  EXPECT_DOUBLE_EQ(rec.predicted(2), 1.0);
  EXPECT_DOUBLE_EQ(rec.residual, 0.0);
}

// Property tests.

TEST(ConvergencePropertyTest, ZeroWeightIsTotalVariation) {
  testing::Gen g(71);
  for (int t = 0; t < 30; ++t) {
    const Kernel p = testing::RandomErgodic(g, 2 + static_cast<std::size_t>(t % 9), 0.4);
    const Measure m = Stationary(p);
    const testing::Dense pd = testing::ToDense(p.matrix());
    for (unsigned long n : {1ul, 3ul, 7ul}) {
      const testing::Dense pn = testing::NaivePower(pd, n);
      double best = 0.0;
      for (std::size_t x = 0; x < pd.size(); ++x) {
        best = std::max(best, testing::L1(pn[x], testing::ToVec(m.weights())));
      }
      EXPECT_NEAR(WeightedGapNorm(p, m, StateFn::Constant(p.space(), 0.0), n), best, 1e-12);
    }
  }
}

TEST(ConvergencePropertyTest, WeakSubmultiplicativity) {
  testing::Gen g(72);
  for (int t = 0; t < 30; ++t) {
    const Kernel p = testing::RandomErgodic(g, 2 + static_cast<std::size_t>(t % 9), 0.4);
    const Measure m = Stationary(p);
    const StateFn v = testing::RandomUnitFn(g, p.space());
    const StateFn big(p.space(), 10.0 * v.values());
    for (unsigned long a : {1ul, 2ul, 4ul}) {
      for (unsigned long b : {1ul, 3ul}) {
        const Matrix pb = Power(p, b).matrix();
        double drift = 0.0;
        for (StateIndex x = 0; x < p.size(); ++x) {
          double s = 0.0;
          for (StateIndex y = 0; y < p.size(); ++y) s += pb(x, y) * (1.0 + big(y));
          drift = std::max(drift, s / (1.0 + big(x)));
        }
        EXPECT_LE(WeightedGapNorm(p, m, big, a + b), WeightedGapNorm(p, m, big, a) * (1.0 + drift) + 1e-12);
      }
    }
  }
}

TEST(ConvergencePropertyTest, DoeblinRateBoundsFit) {
  testing::Gen g(73);
  for (int t = 0; t < 30; ++t) {
    const Kernel p = testing::RandomPositive(g, 2 + static_cast<std::size_t>(t % 8));
    const double alpha = CheckSmallness(p, StateSet::All(p.space())).constant("alpha");
    const DecayReport r =
        ComputeDecayReport(p, Stationary(p), StateFn::Constant(p.space(), 0.0), DefaultDecayGrid());
    if (r.exact_convergence || r.fit_points < 2) continue;
    EXPECT_LE(r.fitted_gamma, 1.0 - alpha + 1e-6);
    // Coupling bound on every norm.
    for (std::size_t i = 0; i < r.ns.size(); ++i) {
      EXPECT_LE(r.norms[i], 2.0 * std::pow(1.0 - alpha, double(r.ns[i])) + 1e-12);
    }
  }
}

TEST(ConvergencePropertyTest, AssumptionAImpliesDecay) {
  testing::Gen g(74);
  int passing = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 8 + static_cast<std::size_t>(g.Int(0, 30));
    const Kernel p = ResetWalk(n, g.U(0.5, 0.9));
    const StateFn v = Geometric(n, g.U(1.1, 1.6));
    const DriftFit fit = FitGeometricDrift(p, v, 1.0);
    if (!(fit.gamma < 1.0)) continue;
    if (!CheckAssumptionA(p, v, fit.gamma, fit.b, 2.0 * fit.b / (1.0 - fit.gamma) + 1.0).holds()) continue;
    ++passing;
    const DecayReport r = ComputeDecayReport(p, Stationary(p), v, DefaultDecayGrid());
    EXPECT_LT(r.fitted_gamma, 1.0);
  }
  EXPECT_GT(passing, 5);
}

}  // namespace
}  // namespace ergocert
