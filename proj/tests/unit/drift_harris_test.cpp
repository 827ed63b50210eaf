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
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "ergocert/almost_invariance.hpp"
#include "ergocert/drift.hpp"
#include "ergocert/harris.hpp"
#include "ergocert/worst_set.hpp"
#include "oracles.hpp"

namespace ergocert {
namespace {

using testing::F;
using testing::K;
using testing::M;
using testing::Q;
using testing::S;
using testing::Space;

// Reflecting walk on {0..n-1}: down with probability `down`, else up.
Kernel Walk(std::size_t n, double down) {
  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    const auto i = static_cast<Eigen::Index>(x);
    rows(i, x == 0 ? 0 : i - 1) += down;
    rows(i, x + 1 == n ? i : i + 1) += 1.0 - down;
  }
  return Kernel(Space(n), rows);
}

StateFn Scaled(std::size_t n, double scale) {
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) v(static_cast<Eigen::Index>(x)) = static_cast<double>(x) * scale;
  return StateFn(Space(n), v);
}

StateSet Range(std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<StateIndex> members;
  for (std::size_t x = lo; x < hi && x < n; ++x) members.push_back(x);
  return StateSet(Space(n), members);
}

TEST(SmallnessTest, Examples) {
  const Kernel p = K({{0.5, 0.5}, {0.25, 0.75}});
  const Certificate one = CheckSmallness(p, S(Space(2), {1}));
  EXPECT_DOUBLE_EQ(one.constant("alpha"), 1.0);
  EXPECT_EQ(one.series.at("nu"), (std::vector<double>{0.25, 0.75}));
  const Certificate both = CheckSmallness(p, StateSet::All(Space(2)));
  EXPECT_DOUBLE_EQ(both.constant("alpha"), 0.75);
  EXPECT_NEAR(both.series.at("nu")[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(both.series.at("nu")[1], 2.0 / 3, 1e-15);
  EXPECT_TRUE(CheckSmallness(K({{1, 0}, {0, 1}}), StateSet::All(Space(2))).fails());
  EXPECT_THROW(CheckSmallness(p, StateSet::Empty(Space(2))), Error);
}

TEST(AssumptionATest, Examples) {
  const Kernel p = K({{0.3, 0.7}, {0.3, 0.7}});
  const StateFn zero = StateFn::Constant(Space(2), 0.0);
  EXPECT_TRUE(CheckAssumptionA(p, zero, 0.5, 0.0, 1.0).holds());
  EXPECT_TRUE(CheckAssumptionA(p, zero, 0.5, 1.0, 4.0 + 1e-9).holds());
  const Certificate edge = CheckAssumptionA(p, zero, 0.5, 1.0, 4.0);
  EXPECT_TRUE(edge.fails());
  EXPECT_DOUBLE_EQ(edge.constant("r_threshold"), 4.0);
  EXPECT_THROW(CheckAssumptionA(p, zero, 1.0, 0.0, 1.0), Error);
}

TEST(AssumptionATest, FittedConstantsOnInwardWalk) {
  const Kernel p = Walk(5, 0.7);
  Vector v(5);
  for (int x = 0; x < 5; ++x) v(x) = std::pow(1.5, x);
  const StateFn fv(Space(5), v);
  const DriftFit fit = FitGeometricDrift(p, fv, 1.0);
  // Interior: PV / V = 0.7 / 1.5 + 0.3 * 1.5; top state: 0.7 / 1.5 + 0.3.
  EXPECT_NEAR(fit.gamma, 0.7 / 1.5 + 0.45, 1e-14);
  const StateFn pv = Apply(p, fv);
  for (StateIndex x = 0; x < 5; ++x) EXPECT_LE(pv(x), fit.gamma * fv(x) + fit.b + 1e-12);
  const double r = 2.0 * fit.b / (1.0 - fit.gamma) + 1.0;
  const Certificate c = CheckAssumptionA(p, fv, fit.gamma, fit.b, r);
  EXPECT_LE(c.constant("max_drift_violation"), 1e-12);
  // [V <= r] is all of E here; rows 0 and 4 share no atom, so it is not small.
  ASSERT_EQ(fv.sublevel_set(r).size(), 5u);
  EXPECT_EQ(p.matrix().row(0).cwiseMin(p.matrix().row(4)).sum(), 0.0);
  EXPECT_TRUE(c.fails());
  // With a partial reset to 0 every row charges state 0.
  const Kernel q = K({{0.8, 0.2, 0.0}, {0.6, 0.2, 0.2}, {0.5, 0.3, 0.2}});
  const StateFn v3(Space(3), testing::V({1.0, 1.5, 2.25}));
  const DriftFit f3 = FitGeometricDrift(q, v3, 1.0);
  EXPECT_TRUE(CheckAssumptionA(q, v3, f3.gamma, f3.b, 2.0 * f3.b / (1.0 - f3.gamma) + 1.0).holds());
}

TEST(AssumptionAPrimeTest, Examples) {
  const Kernel p = K({{0.3, 0.7}, {0.6, 0.4}});
  const StateFn one = StateFn::Constant(Space(2), 1.0);
  EXPECT_TRUE(CheckAssumptionAPrime(p, one, 0.9, 0.2, StateSet::All(Space(2))).holds());
  EXPECT_TRUE(CheckAssumptionAPrime(p, one, 0.9, 0.2, StateSet::Empty(Space(2))).fails());
  EXPECT_THROW(CheckAssumptionAPrime(p, StateFn::Constant(Space(2), 0.5), 0.9, 0.2, StateSet::All(Space(2))), Error);
}

TEST(AssumptionBTest, InwardAndOutward) {
  const std::size_t n = 101;
  const StateFn v = Scaled(n, 1.0 / 0.4);
  const StateSet c = Range(n, 0, 6);
  std::vector<StateSet> tails;
  for (std::size_t k = 6; k <= 10; ++k) tails.push_back(Range(n, k, n));
  const Certificate in = CheckAssumptionB(Walk(n, 0.7), v, 1.75, c, tails);
  EXPECT_TRUE(in.holds());
  const std::vector<double>& sups = in.series.at("tail_sups");
  ASSERT_EQ(sups.size(), 5u);
  EXPECT_NEAR(sups[0], 0.3, 1e-15);
  for (std::size_t i = 1; i < sups.size(); ++i) EXPECT_EQ(sups[i], 0.0);
  const Certificate out = CheckAssumptionB(Walk(n, 0.3), v, 1.75, c, tails);
  EXPECT_TRUE(out.fails());
  ASSERT_TRUE(out.witness.has_value());
  ASSERT_TRUE(out.witness->state.has_value());
  EXPECT_FALSE(c.contains(Space(n).index_of(*out.witness->state)));
  std::vector<StateSet> bad = {Range(n, 8, n), Range(n, 6, n)};
  EXPECT_THROW(CheckAssumptionB(Walk(n, 0.7), v, 1.75, c, bad), Error);
  const Certificate all = CheckAssumptionB(K({{0.3, 0.7}, {0.6, 0.4}}), StateFn::Constant(Space(2), 0.0), 1.0,
                                           StateSet::All(Space(2)));
  EXPECT_NEAR(all.constant("domination_mass"), 1.3, 1e-15);
}

TEST(GeneralizedDriftTest, Examples) {
  const std::size_t n = 30;
  const Kernel p = Walk(n, 0.7);
  const StateFn v = Scaled(n, 1.0 / 0.4);
  Vector b = Vector::Zero(n);
  b(0) = 1.75;
  EXPECT_TRUE(CheckGeneralizedDrift(p, v, StateFn(Space(n), b), Range(n, 0, 1)).holds());
  b(0) = 1.7;
  EXPECT_TRUE(CheckGeneralizedDrift(p, v, StateFn(Space(n), b), Range(n, 0, 1)).fails());
  b(0) = 1e6;
  EXPECT_TRUE(CheckGeneralizedDrift(p, v, StateFn(Space(n), b), Range(n, 0, 1)).holds());
  const Certificate none = CheckGeneralizedDrift(p, StateFn::Constant(Space(n), 0.0),
                                                 StateFn::Constant(Space(n), 0.0), Range(n, 0, 1));
  EXPECT_TRUE(none.fails());
  EXPECT_TRUE(none.witness.has_value());
}

TEST(ConditionDTest, Examples) {
  const std::size_t n = 20;
  const Kernel p = Walk(n, 0.7);
  const StateFn v = Scaled(n, 1.0 / 0.4);
  const Measure m = Measure::Uniform(Space(n));
  const Certificate bounded = CheckConditionD(p, m, v, StateFn::Constant(Space(n), 2.0), 4.0, 1, 64);
  EXPECT_TRUE(bounded.holds());
  // [V <= 4] = {0, 1}.
  EXPECT_LE(bounded.constant("sup"), 4.0 * 2.0 / n + 1e-12);
  for (double x : bounded.series.at("profile")) EXPECT_NEAR(x, 4.0 * 2.0 / n, 1e-12);

  // b(x) = x: the limit is m([V <= r]) pi(b^2).
  const Certificate grow = CheckConditionD(p, m, v, Scaled(n, 1.0), 4.0, 1, 64);
  const testing::Vec pi = testing::StationaryOracle(testing::ToDense(p.matrix()));
  double second = 0.0;
  for (std::size_t x = 0; x < n; ++x) second += pi[x] * static_cast<double>(x * x);
  EXPECT_NEAR(grow.constant("limit"), 2.0 / n * second, 1e-9);
  EXPECT_THROW(CheckConditionD(p, m, v, Scaled(n, 1.0), 4.0, 65, 64), Error);
}

TEST(ConditionDTest, AcrossLevels) {
  EXPECT_TRUE(ConditionDAcrossLevels({1.0, 1.5, 1.6, 1.605}).holds());
  EXPECT_EQ(ConditionDAcrossLevels({1.0, 2.0, 4.0}).verdict, Verdict::kInconclusive);
}

TEST(AssumptionCTest, Examples) {
  const Kernel p = K({{0.2, 0.8}, {0.6, 0.4}});
  const Measure m = M(Space(2), {0.5, 0.5});
  const Certificate edge = CheckAssumptionC(p, m, 1.0, StateFn::Constant(Space(2), 1.0), S(Space(2), {0}));
  EXPECT_TRUE(edge.fails());
  EXPECT_NEAR(edge.constant("ii2_sup"), 0.0, 1e-15);
  EXPECT_LE(edge.constant("max_excess_over_gamma"), 0.0);

  const Measure w = M(Space(3), {1.0, 2.0, 1.0});
  const Kernel flat = K({{0.25, 0.5, 0.25}, {0.25, 0.5, 0.25}, {0.25, 0.5, 0.25}});
  const Certificate tight = CheckAssumptionC(flat, w, 0.25, StateFn::Constant(Space(3), 0.0), S(Space(3), {1}));
  EXPECT_NEAR(tight.constant("max_excess_over_gamma"), 0.0, 1e-15);
  EXPECT_TRUE(tight.holds());
  EXPECT_NE(tight.Find(ConditionId::kMeanAlmostInv), nullptr);
  EXPECT_THROW(CheckAssumptionC(p, m, -1.0, StateFn::Constant(Space(2), 0.0), S(Space(2), {0})), Error);
}

TEST(AssumptionCPrimeTest, Examples) {
  const Measure w = M(Space(3), {1.0, 2.0, 1.0});
  const Kernel flat = K({{0.25, 0.5, 0.25}, {0.25, 0.5, 0.25}, {0.25, 0.5, 0.25}});
  AlmostInvarianceParams params;
  params.phi = Phi::Linear(0.25);
  params.delta = 0.0;
  const Certificate c = CheckAssumptionCPrime(flat, w, params, S(Space(3), {0, 2}), 8);
  EXPECT_TRUE(c.holds());
  EXPECT_NEAR(c.constant("set_sup"), 0.0, 1e-15);
  EXPECT_LE(c.constant("f_grid_sup"), c.constant("set_sup") + 1e-12);
  EXPECT_NEAR(c.constant("inf_occupation"), 2.0, 1e-12);
  const Certificate* mai = c.Find(ConditionId::kMeanAlmostInv);
  ASSERT_NE(mai, nullptr);
  EXPECT_TRUE(mai->holds());

  params.phi = Phi::Linear(0.1);
  params.delta = 0.2;
  const Certificate bad = CheckAssumptionCPrime(flat, w, params, S(Space(3), {0}));
  EXPECT_TRUE(bad.fails());
  EXPECT_TRUE(bad.witness.has_value());
}

TEST(ConditionETest, FailsFastAndHolds) {
  const std::size_t n = 30;
  const Kernel p = Walk(n, 0.7);
  const StateFn v = Scaled(n, 1.0 / 0.4);
  Vector b = Vector::Zero(n);
  b(0) = 1.75;
  const StateFn bf(Space(n), b);
  const Measure m = Measure::Uniform(Space(n));
  ConditionEParams params;
  params.cprime.phi = Phi::Linear(21.0);  // row 0 is (0.7, 0.3, 0, ...), m(a) = 1/30
  params.cprime.delta = 0.1;
  params.r = 4.0;
  params.horizon = 128;

  const Certificate drift_fail = CheckConditionE(p, m, StateFn::Constant(Space(n), 0.0), bf, Range(n, 0, 1), params);
  EXPECT_TRUE(drift_fail.fails());
  EXPECT_TRUE(drift_fail.witness.has_value());

  ConditionEParams weak = params;
  weak.cprime.phi = Phi::Linear(1.0);
  EXPECT_TRUE(CheckConditionE(p, m, v, bf, Range(n, 0, 1), weak).fails());

  const Certificate ok = CheckConditionE(p, m, v, bf, Range(n, 0, 1), params);
  EXPECT_TRUE(ok.holds()) << ok.notes;
  const Certificate* ai = ok.Find(ConditionId::kAlmostInv);
  ASSERT_NE(ai, nullptr);
  EXPECT_TRUE(ai->holds());
  EXPECT_LT(ai->constant("delta_min"), 1.0);
}

TEST(LasotaSzarekTest, Examples) {
  const std::vector<double> grid = {0.5, 1, 2, 4, 8};
  const Semigroup sym = Semigroup::Continuous(Q({{-1, 1}, {1, -1}}));
  const Certificate c = CheckLasotaSzarekHalf(sym, Measure::Dirac(Space(2), 0), S(Space(2), {0}), grid);
  EXPECT_TRUE(c.holds());
  const std::vector<double>& occ = c.series.at("occupation");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(occ[i], 0.5 + (1.0 - std::exp(-2.0 * grid[i])) / (4.0 * grid[i]), 1e-9);
  }
  // The long-run occupation is exactly 1/2, so nothing is concluded.
  EXPECT_NEAR(c.constant("limit_occupation"), 0.5, 1e-12);
  EXPECT_EQ(c.Find(ConditionId::kAlmostInv), nullptr);

  const Semigroup cyc = Semigroup::Continuous(Q({{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}}));
  const Certificate inv =
      CheckLasotaSzarekHalf(cyc, Measure::Uniform(Space(3)), S(Space(3), {0, 1}), grid);
  EXPECT_TRUE(inv.holds());
  for (double x : inv.series.at("occupation")) EXPECT_NEAR(x, 2.0 / 3, 1e-9);
  const Certificate* ai = inv.Find(ConditionId::kAlmostInv);
  ASSERT_NE(ai, nullptr);
  EXPECT_TRUE(ai->holds());

  // Transient start, absorbed away from K.
  const Semigroup away = Semigroup::Continuous(Q({{-1, 1, 0}, {0, -1, 1}, {0, 0, 0}}));
  const Certificate leak =
      CheckLasotaSzarekHalf(away, Measure::Dirac(Space(3), 0), S(Space(3), {0}), {8, 16, 32});
  EXPECT_TRUE(leak.fails());
  EXPECT_THROW(CheckLasotaSzarekHalf(sym, M(Space(2), {0.5, 0.6}), S(Space(2), {0}), grid), Error);
}

TEST(UniformBoundLpTest, Examples) {
  const std::vector<double> alphas = {8, 4, 2, 1, 0.5, 0.25, 0.125};
  const Semigroup sym = Semigroup::Continuous(Q({{-1, 1}, {1, -1}}));
  for (double p : {1.0, 2.0, 3.0}) {
    const Certificate inv = CheckUniformBoundLp(sym, M(Space(2), {0.5, 0.5}), p, alphas);
    EXPECT_TRUE(inv.holds());
    EXPECT_NEAR(inv.constant("M"), 1.0, 1e-9);
  }
  // p = 1 norm at m = (0.9, 0.1) is 5 - 4k with k = alpha / (alpha + 2).
  const Certificate skew = CheckUniformBoundLp(sym, M(Space(2), {0.9, 0.1}), 1.0, alphas);
  EXPECT_TRUE(skew.holds());
  const std::vector<double>& norms = skew.series.at("norms");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    EXPECT_NEAR(norms[i], 5.0 - 4.0 * alphas[i] / (alphas[i] + 2.0), 1e-12);
  }
  EXPECT_NEAR(skew.constant("M"), 81.0 / 17.0, 1e-12);
  EXPECT_NE(skew.Find(ConditionId::kResolventAlmostInv), nullptr);
  EXPECT_THROW(CheckUniformBoundLp(sym, M(Space(2), {1.0, 0.0}), 1.0, alphas), Error);
}

// Property tests.

double LpRatio(const Matrix& t, const Vector& m, const Vector& f, double p) {
  const Vector tf = t * f;
  return std::pow(m.dot(tf.array().pow(p).matrix()), 1.0 / p) / std::pow(m.dot(f.array().pow(p).matrix()), 1.0 / p);
}

TEST(LpNormPropertyTest, MatchesHillClimb) {
  testing::Gen g(41);
  for (int t = 0; t < 12; ++t) {
    const Kernel k = testing::RandomPositive(g, 3);
    const Vector m = testing::RandomMeasure(g, k.space(), false).weights();
    const double p = std::vector<double>{1.5, 2.0, 3.0}[static_cast<std::size_t>(t % 3)];
    double best = 0.0;
    for (int start = 0; start < 6; ++start) {
      Vector logf(3);
      for (int i = 0; i < 3; ++i) logf(i) = g.U(-2, 2);
      double cur = LpRatio(k.matrix(), m, logf.array().exp().matrix(), p);
      for (double step = 1.0; step > 1e-10; step /= 2) {
        bool moved = true;
        while (moved) {
          moved = false;
          for (int i = 0; i < 3; ++i) {
            for (double dir : {step, -step}) {
              Vector cand = logf;
              cand(i) += dir;
              const double r = LpRatio(k.matrix(), m, cand.array().exp().matrix(), p);
              if (r > cur) {
                cur = r;
                logf = cand;
                moved = true;
              }
            }
          }
        }
      }
      best = std::max(best, cur);
    }
    const LpNorm norm = LpOperatorNorm(k.matrix(), m, p);
    EXPECT_TRUE(norm.converged);
    EXPECT_NEAR(norm.value, best, 1e-6);
    EXPECT_GE(norm.value, best - 1e-12);
  }
}

TEST(DriftPropertyTest, SmallnessMinorizesRows) {
  testing::Gen g(42);
  for (int t = 0; t < 50; ++t) {
    const Kernel p = testing::RandomPositive(g, 2 + static_cast<std::size_t>(t % 7));
    std::vector<StateIndex> members;
    for (StateIndex x = 0; x < p.size(); ++x) {
      if (g.Coin()) members.push_back(x);
    }
    if (members.empty()) members.push_back(0);
    const StateSet c(p.space(), members);
    const Certificate cert = CheckSmallness(p, c);
    ASSERT_TRUE(cert.holds());
    const double alpha = cert.constant("alpha");
    const std::vector<double>& nu = cert.series.at("nu");
    for (StateIndex x : members) {
      for (StateIndex a = 0; a < p.size(); ++a) EXPECT_GE(p(x, a), alpha * nu[a] - 1e-15);
    }
    // Doeblin: pair gaps on C are at most 1 - alpha.
    for (StateIndex x : members) {
      for (StateIndex y : members) EXPECT_LE(PairGap(p, x, y, 1, 1), 1.0 - alpha + 1e-14);
    }
  }
}

TEST(DriftPropertyTest, FittedDriftHoldsPointwise) {
  testing::Gen g(43);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 5 + static_cast<std::size_t>(t % 20);
    const Kernel p = Walk(n, g.U(0.55, 0.9));
    Vector v(static_cast<Eigen::Index>(n));
    const double base = g.U(1.1, 2.0);
    for (std::size_t x = 0; x < n; ++x) v(static_cast<Eigen::Index>(x)) = std::pow(base, static_cast<double>(x));
    const StateFn fv(p.space(), v);
    const DriftFit fit = FitGeometricDrift(p, fv, g.U(0, 3));
    const StateFn pv = Apply(p, fv);
    for (StateIndex x = 0; x < n; ++x) EXPECT_LE(pv(x), fit.gamma * fv(x) + fit.b + 1e-9 * fv(x));
    EXPECT_NEAR(DriftOffset(p, fv, fit.gamma), fit.b, 1e-9);
  }
}

TEST(DriftPropertyTest, OccupationBoundIsRespected) {
  testing::Gen g(44);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 10 + static_cast<std::size_t>(t);
    const double down = g.U(0.6, 0.9);
    const Kernel p = Walk(n, down);
    const double scale = 1.0 / (2.0 * down - 1.0);
    const StateFn v = Scaled(n, scale);
    const double b = 1.0 + down * scale;  // PV(0) = (1 - down) scale
    const Certificate drift = CheckAssumptionB(p, v, b, Range(n, 0, 1));
    ASSERT_TRUE(drift.holds());
    const OccupationBound ob = DriftOccupationBound(p, v, b, Range(n, 0, 1), Measure::Uniform(p.space()), 128);
    EXPECT_TRUE(ob.satisfied);
    EXPECT_GE(ob.observed_inf, ob.bound - 1e-12);
  }
}

}  // namespace
}  // namespace ergocert
