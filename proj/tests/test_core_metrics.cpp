#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "safemon/core_metrics.hpp"

namespace {

using safemon::ReturnTriple;

ReturnTriple safety(double f, double fm, double fstar = 1.0) {
  ReturnTriple r;
  r.safety_f = f;
  r.safety_fm = fm;
  r.safety_fstar = fstar;
  r.mission_f = 1.0;
  r.mission_fm = 1.0;
  return r;
}

ReturnTriple mission(double f, double fm) {
  ReturnTriple r;
  r.mission_f = f;
  r.mission_fm = fm;
  return r;
}

std::vector<ReturnTriple> random_triples(safemon::testing::Rng& rng, std::size_t n) {
  using safemon::testing::uniform;
  std::vector<ReturnTriple> v(n);
  for (auto& r : v) {
    r.safety_f = uniform(rng, -2.0, 2.0);
    r.safety_fm = uniform(rng, -2.0, 2.0);
    r.safety_fstar = uniform(rng, -2.0, 2.0);
    r.mission_f = uniform(rng);
    r.mission_fm = uniform(rng);
    r.weight = safemon::testing::random_weight(rng);
  }
  v.front().weight = 1.0;
  return v;
}

TEST(AggregateSg, NullMonitorIsZero) {
  std::vector<ReturnTriple> v{safety(0, 0), safety(1, 1), safety(0.5, 0.5), safety(1, 1)};
  EXPECT_EQ(safemon::aggregate_sg(v), 0.0);
}

TEST(AggregateSg, HandSum) {
  std::vector<ReturnTriple> v{safety(0, 1), safety(1, 1), safety(0, 0), safety(1, 1)};
  EXPECT_DOUBLE_EQ(safemon::aggregate_sg(v), 0.25);
}

TEST(AggregateSg, WeightedMean) {
  auto a = safety(0, 1);
  a.weight = 3.0;
  auto b = safety(0, 0);
  b.weight = 1.0;
  std::vector<ReturnTriple> v{a, b};
  EXPECT_DOUBLE_EQ(safemon::aggregate_sg(v), 0.75);
}

TEST(AggregateSg, ZeroWeightRecordIsIgnored) {
  auto a = safety(0, 1);
  a.weight = 0.0;
  std::vector<ReturnTriple> v{a, safety(0, 0)};
  EXPECT_EQ(safemon::aggregate_sg(v), 0.0);
}

TEST(AggregateSg, RejectsEmptyAndZeroWeight) {
  std::vector<ReturnTriple> empty;
  EXPECT_THROW(safemon::aggregate_sg(empty), safemon::InvalidInput);
  auto a = safety(0, 1);
  a.weight = 0.0;
  std::vector<ReturnTriple> zero{a, a};
  EXPECT_THROW(safemon::aggregate_sg(zero), safemon::InvalidInput);
  a.weight = -1.0;
  std::vector<ReturnTriple> negative{a};
  EXPECT_THROW(safemon::aggregate_sg(negative), safemon::InvalidInput);
}

TEST(AggregateRh, Examples) {
  std::vector<ReturnTriple> perfect{safety(0, 1, 1), safety(1, 1, 1)};
  EXPECT_EQ(safemon::aggregate_rh(perfect), 0.0);
  std::vector<ReturnTriple> v{safety(0, 0, 1), safety(0, 1, 1), safety(0, 1, 1), safety(0, 0, 1)};
  EXPECT_DOUBLE_EQ(safemon::aggregate_rh(v), 0.5);
}

TEST(AggregateAc, Examples) {
  std::vector<ReturnTriple> silent{mission(1, 1), mission(0, 0)};
  EXPECT_EQ(safemon::aggregate_ac(silent), 0.0);
  std::vector<ReturnTriple> v{mission(1, 0), mission(1, 1)};
  EXPECT_DOUBLE_EQ(safemon::aggregate_ac(v), 0.5);
}

TEST(Decomposition, NullMonitorLeavesAllHazardResidual) {
  std::vector<ReturnTriple> v{safety(0, 0), safety(1, 1), safety(0, 0)};
  const auto report = safemon::summarize(v);
  EXPECT_EQ(report.sg, 0.0);
  EXPECT_EQ(report.rh, report.hazard_f);
  EXPECT_EQ(safemon::decomposition_residual(report), 0.0);
}

TEST(Decomposition, HoldsOnRandomSets) {
  safemon::testing::Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto v = random_triples(rng, 1 + trial % 200);
    for (bool compensated : {false, true}) {
      const auto report = safemon::summarize(v, "random", {}, compensated);
      EXPECT_LT(safemon::decomposition_residual(report), 1e-12);
    }
  }
}

TEST(NullMonitor, GivesExactZeros) {
  safemon::testing::Rng rng(11);
  const auto v = random_triples(rng, 300);
  const auto nulled = safemon::with_null_monitor(v);
  EXPECT_EQ(safemon::aggregate_sg(nulled), 0.0);
  EXPECT_EQ(safemon::aggregate_ac(nulled), 0.0);
}

TEST(Properties, PermutationStability) {
  safemon::testing::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto v = random_triples(rng, 1000);
    const auto plain = safemon::summarize(v);
    const auto comp = safemon::summarize(v, {}, {}, true);
    std::shuffle(v.begin(), v.end(), rng);
    const auto plain_perm = safemon::summarize(v);
    const auto comp_perm = safemon::summarize(v, {}, {}, true);
    EXPECT_NEAR(plain.sg, plain_perm.sg, 1e-9);
    EXPECT_NEAR(plain.rh, plain_perm.rh, 1e-9);
    EXPECT_NEAR(plain.ac, plain_perm.ac, 1e-9);
    EXPECT_NEAR(comp.sg, comp_perm.sg, 1e-12);
    EXPECT_NEAR(comp.rh, comp_perm.rh, 1e-12);
    EXPECT_NEAR(comp.ac, comp_perm.ac, 1e-12);
    EXPECT_NEAR(comp.hazard_f, comp_perm.hazard_f, 1e-12);
  }
}

TEST(Properties, ScalingEquivariance) {
  safemon::testing::Rng rng(5);
  for (double c : {0.5, 2.0, 7.25}) {
    auto v = random_triples(rng, 400);
    const auto base = safemon::summarize(v);
    for (auto& r : v) {
      r.safety_f *= c;
      r.safety_fm *= c;
      r.safety_fstar *= c;
    }
    const auto scaled = safemon::summarize(v);
    EXPECT_NEAR(scaled.sg, c * base.sg, 1e-12);
    EXPECT_NEAR(scaled.rh, c * base.rh, 1e-12);
    EXPECT_NEAR(scaled.hazard_f, c * base.hazard_f, 1e-12);
  }
}

TEST(Summation, CompensatedRecoversCancellation) {
  // 1 + 1e-16 * many: naive summation drops every tiny term.
  std::vector<ReturnTriple> v;
  v.push_back(safety(0, 1e16, 0));
  for (int i = 0; i < 1000; ++i) v.push_back(safety(0, 1.0, 0));
  v.push_back(safety(0, -1e16, 0));
  const double exact = 1000.0 / 1002.0;
  EXPECT_NEAR(safemon::aggregate_sg(v, true), exact, 1e-15);
  EXPECT_GT(std::abs(safemon::aggregate_sg(v, false) - exact), 1e-3);
}

TEST(NormalizeReport, Divides) {
  std::vector<ReturnTriple> v{safety(0, 1, 2), mission(1, 0)};
  const auto report = safemon::summarize(v, "x");
  const auto same = safemon::normalize_report(report, 1.0, 1.0);
  EXPECT_EQ(same.sg, report.sg);
  EXPECT_EQ(same.rh, report.rh);
  EXPECT_EQ(same.ac, report.ac);
  EXPECT_EQ(same.hazard_f, report.hazard_f);

  const auto half = safemon::normalize_report(report, 2.0, 4.0);
  EXPECT_DOUBLE_EQ(half.sg, 0.25);
  EXPECT_DOUBLE_EQ(half.rh, report.rh / 2.0);
  EXPECT_DOUBLE_EQ(half.hazard_f, report.hazard_f / 2.0);
  EXPECT_DOUBLE_EQ(half.ac, report.ac / 4.0);
  EXPECT_EQ(half.n, report.n);
  EXPECT_EQ(half.scheme_name, "x");
  EXPECT_EQ(half.safety_scale, 2.0);
  EXPECT_EQ(half.mission_scale, 4.0);
}

TEST(NormalizeReport, RejectsNonpositiveDivisors) {
  const auto report = safemon::summarize(std::vector<ReturnTriple>{safety(0, 1)});
  EXPECT_THROW(safemon::normalize_report(report, 0.0, 1.0), safemon::InvalidInput);
  EXPECT_THROW(safemon::normalize_report(report, 1.0, -2.0), safemon::InvalidInput);
}

TEST(NormalizeReport, UnitRangeSafetyStaysInUnitInterval) {
  safemon::testing::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ReturnTriple> v(50);
    for (auto& r : v) r = safety(3.0 * safemon::testing::uniform(rng), 3.0 * safemon::testing::uniform(rng));
    const auto n = safemon::normalize_report(safemon::summarize(v), 3.0, 1.0);
    EXPECT_GE(n.sg, -1.0);
    EXPECT_LE(n.sg, 1.0);
  }
}

}  // namespace
