#include <gtest/gtest.h>

#include "safemon/cli_report.hpp"
#include "safemon/scenario_generators.hpp"

namespace {

using safemon::EvaluateOptions;
using safemon::RecordSet;
using safemon::Scheme;

safemon::MetricsReport run(RecordSet records, Scheme scheme) {
  EvaluateOptions opts;
  opts.scheme = scheme;
  return safemon::evaluate(records, opts);
}

TEST(SynthClassification, CountsBecomeRatios) {
  const auto r = run(safemon::gen::synth_classification(1000, 324, 184, 304), Scheme::clf_error);
  EXPECT_EQ(r.n, 1000u);
  EXPECT_DOUBLE_EQ(r.sg, 0.184);
  EXPECT_DOUBLE_EQ(r.rh, 0.140);
  EXPECT_DOUBLE_EQ(r.ac, 0.304);
  EXPECT_DOUBLE_EQ(r.hazard_f, 0.324);
}

TEST(SynthClassification, Layout) {
  const auto v = safemon::gen::synth_classification(20, 5, 2, 3);
  ASSERT_EQ(v.size(), 20u);
  std::size_t errors = 0, true_alarms = 0, false_alarms = 0;
  for (const auto& r : v) {
    const bool err = r.true_label != r.predicted_label;
    errors += err;
    true_alarms += err && r.monitor_flag;
    false_alarms += !err && r.monitor_flag;
    EXPECT_FALSE(r.threat_flag);
  }
  EXPECT_EQ(errors, 5u);
  EXPECT_EQ(true_alarms, 2u);
  EXPECT_EQ(false_alarms, 3u);
  EXPECT_EQ(v[0].example_id, "ex000000");
}

TEST(SynthClassification, RejectsImpossibleCounts) {
  using safemon::gen::synth_classification;
  EXPECT_THROW(synth_classification(10, 11, 0, 0), safemon::InvalidInput);
  EXPECT_THROW(synth_classification(10, 3, 4, 0), safemon::InvalidInput);
  EXPECT_THROW(synth_classification(10, 3, 0, 8), safemon::InvalidInput);
  EXPECT_NO_THROW(synth_classification(10, 3, 3, 7));
}

TEST(SynthThreat, CountsBecomeRatios) {
  const auto a = run(safemon::gen::synth_threat(1000, 500, 344, 144), Scheme::clf_threat);
  EXPECT_DOUBLE_EQ(a.sg, 0.344);
  EXPECT_DOUBLE_EQ(a.rh, 0.156);
  EXPECT_DOUBLE_EQ(a.ac, 0.144);
  EXPECT_DOUBLE_EQ(a.hazard_f, 0.5);
  const auto b = run(safemon::gen::synth_threat(1000, 500, 86, 142), Scheme::clf_threat);
  EXPECT_DOUBLE_EQ(b.sg, 0.086);
  EXPECT_DOUBLE_EQ(b.rh, 0.414);
  EXPECT_DOUBLE_EQ(b.ac, 0.142);
}

TEST(SynthThreat, RejectsImpossibleCounts) {
  using safemon::gen::synth_threat;
  EXPECT_THROW(synth_threat(10, 11, 0, 0), safemon::InvalidInput);
  EXPECT_THROW(synth_threat(10, 4, 5, 0), safemon::InvalidInput);
  EXPECT_THROW(synth_threat(10, 4, 0, 7), safemon::InvalidInput);
}

TEST(Reconstructions, ClassifierTable) {
  const auto r = run(safemon::gen::table1_reconstruction(), Scheme::clf_error);
  EXPECT_EQ(safemon::format_table(r).find("0.184 0.140 0.304") != std::string::npos, true);
}

TEST(Reconstructions, LandingCandidateAverage) {
  const auto r = run(safemon::gen::table3_e1_reconstruction(), Scheme::landing_e1);
  EXPECT_EQ(r.n, 420u);
  EXPECT_NEAR(r.sg, 0.805, 1e-12);
  EXPECT_NEAR(r.rh, 0.195, 1e-12);
  EXPECT_EQ(r.ac, 0.0);
}

TEST(Generators, Deterministic) {
  EXPECT_EQ(safemon::gen::table1_reconstruction(), safemon::gen::table1_reconstruction());
  EXPECT_EQ(safemon::gen::table3_e1_reconstruction(), safemon::gen::table3_e1_reconstruction());
  EXPECT_EQ(safemon::to_string(RecordSet{safemon::gen::synth_threat(50, 10, 5, 5)}),
            safemon::to_string(RecordSet{safemon::gen::synth_threat(50, 10, 5, 5)}));
}

}  // namespace
