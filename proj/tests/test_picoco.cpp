#include <gtest/gtest.h>

#include <sstream>

#include "irrkit/picoco_harness.hpp"
#include "oracles.hpp"

using namespace irrkit;
using namespace irrkit::picoco;

namespace {

ExperimentConfig collinear_config() {
  ExperimentConfig c;
  c.e = 1;
  c.r = 2;
  c.max_cardinality = 4;
  c.recipe.kind = RecipeKind::Collinear;
  c.trials = 10;
  c.master_seed = 3;
  return c;
}

ExperimentConfig grid_config(std::size_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.e = 3;
  c.r = 8;
  c.max_cardinality = 27;
  c.trials = trials;
  c.master_seed = seed;
  return c;
}

std::string dump(const ExperimentResult& res) {
  std::ostringstream out;
  write_jsonl(out, res.config, res.records);
  return out.str();
}

}  // namespace

TEST(Config, Validation) {
  EXPECT_EQ(question_bound(3, 8), 27);
  EXPECT_EQ(question_bound(3, 10), 35);
  auto c = grid_config(0, 1);
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(run_experiment(c), ConfigError);
  c = grid_config(1, 1);
  c.max_cardinality = 28;
  EXPECT_THROW(c.validate(), ConfigError);
  c.max_cardinality = 9;
  EXPECT_THROW(c.validate(), ConfigError);
  c.max_cardinality = 10;
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, JsonRoundTrip) {
  auto c = grid_config(12, 99);
  c.recipe.allow_union = false;
  c.recipe.max_side = 5;
  auto back = config_from_json(config_json(c));
  EXPECT_EQ(config_json(back), config_json(c));
  EXPECT_THROW(config_from_json(json{{"e", 1}}), ConfigError);
}

TEST(RunExperiment, CollinearSetsLieOnTheirLine) {
  auto res = run_experiment(collinear_config(), 2);
  ASSERT_EQ(res.records.size(), 10u);
  EXPECT_EQ(res.report.consistent, 10u);
  for (const auto& rec : res.records) {
    EXPECT_TRUE(rec.cb_verified);
    ASSERT_TRUE(rec.min_curve_degree);
    EXPECT_EQ(*rec.min_curve_degree, 1);
    EXPECT_EQ(rec.status, TrialStatus::Consistent);
    EXPECT_EQ(rec.cardinality, 4u);
  }
}

// Every record: CB re-verified by the rank-loop oracle, status invariant, size window, lemma.
TEST(RunExperiment, GridResidualRecordsAreSound) {
  auto cfg = grid_config(30, 11);
  auto res = run_experiment(cfg, 4);
  EXPECT_EQ(res.report.candidates, 0u);
  EXPECT_EQ(res.report.generator_failed, 0u);
  for (const auto& rec : res.records) {
    EXPECT_TRUE(oracle::cb_by_rank_loop(rec.points, cfg.r)) << rec.trace;
    EXPECT_GE(static_cast<long>(rec.cardinality), cfg.r + 2);
    EXPECT_LE(static_cast<long>(rec.cardinality), cfg.max_cardinality);
    const bool cand = rec.cb_verified && (!rec.min_curve_degree || *rec.min_curve_degree > cfg.e);
    EXPECT_EQ(cand, rec.status == TrialStatus::CounterexampleCandidate);
    EXPECT_EQ(rec.point_set_digest, point_set_digest(rec.points));
  }
}

TEST(RunExperiment, DeterministicAcrossWorkerCounts) {
  auto cfg = grid_config(12, 5);
  const std::string one = dump(run_experiment(cfg, 1));
  EXPECT_EQ(one, dump(run_experiment(cfg, 3)));
  EXPECT_EQ(one, dump(run_experiment(cfg, 1)));
  cfg.master_seed = 6;
  EXPECT_NE(one, dump(run_experiment(cfg, 1)));
}

TEST(Jsonl, RoundTripAndTimestampHeader) {
  auto res = run_experiment(grid_config(5, 2), 1);
  std::ostringstream out;
  write_jsonl(out, res.config, res.records, std::string("2026-01-01T00:00:00Z"));
  std::istringstream in(out.str());
  auto file = read_jsonl(in);
  EXPECT_EQ(config_json(file.config), config_json(res.config));
  ASSERT_EQ(file.records.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(record_json(file.records[i]), record_json(res.records[i]));
}

TEST(Reverify, ZeroCandidatesUnchanged) {
  auto res = run_experiment(collinear_config(), 1);
  std::istringstream in(dump(res));
  auto again = reverify(read_jsonl(in));
  EXPECT_EQ(report_json(again.report), report_json(res.report));
}

TEST(Reverify, FabricatedNonCBCandidateIsReclassified) {
  auto cfg = collinear_config();
  TrialRecord fake;
  fake.trial_index = 0;
  // Three non-collinear points: not CB(2), on no line.
  IntVector a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
  fake.points = PointSet(2, {ProjPoint(a), ProjPoint(b), ProjPoint(c)});
  fake.cardinality = 3;
  fake.point_set_digest = point_set_digest(fake.points);
  fake.cb_verified = true;
  fake.status = TrialStatus::CounterexampleCandidate;
  std::ostringstream out;
  write_jsonl(out, cfg, {fake});
  std::istringstream in(out.str());
  auto once = reverify(read_jsonl(in));
  ASSERT_EQ(once.records.size(), 1u);
  EXPECT_EQ(once.records[0].status, TrialStatus::GeneratorFailed);
  EXPECT_FALSE(once.records[0].cb_verified);
  EXPECT_EQ(once.report.candidates, 0u);
  EXPECT_EQ(once.report.generator_failed, 1u);

  // Idempotent.
  std::ostringstream out2;
  write_jsonl(out2, once.config, once.records);
  std::istringstream in2(out2.str());
  auto twice = reverify(read_jsonl(in2));
  EXPECT_EQ(dump(twice), dump(once));
}

TEST(Reverify, GenuineCandidateIsConfirmed) {
  // A 2x2 grid is CB(1) and on no line. It is outside the cardinality bound, so only the
  // classification is exercised here.
  ExperimentConfig cfg;
  cfg.e = 1;
  cfg.r = 1;
  cfg.max_cardinality = 3;
  TrialRecord rec = classify(0, GeneratedSet{grid_generator(2, 2), "grid(2,2)"}, cfg.e, cfg.r);
  EXPECT_EQ(rec.status, TrialStatus::CounterexampleCandidate);
  std::ostringstream out;
  write_jsonl(out, cfg, {rec});
  std::istringstream in(out.str());
  auto again = reverify(read_jsonl(in));
  EXPECT_EQ(again.records[0].status, TrialStatus::CounterexampleCandidate);
  EXPECT_EQ(report_json(again.report)["candidates"][0]["label"], "candidate pending human review");
}

TEST(Reverify, TruncatedLineReportsLineNumber) {
  auto res = run_experiment(collinear_config(), 1);
  std::string text = dump(res);
  // Cut the third line in half.
  std::size_t start = 0;
  for (int i = 0; i < 2; ++i) start = text.find('\n', start) + 1;
  const std::size_t end = text.find('\n', start);
  text = text.substr(0, start + (end - start) / 2) + "\n";
  std::istringstream in(text);
  try {
    read_jsonl(in);
    FAIL() << "expected CorruptRecord";
  } catch (const CorruptRecord& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Reverify, TamperedDigestIsCorrupt) {
  auto res = run_experiment(collinear_config(), 1);
  res.records[1].point_set_digest = std::string(64, '0');
  std::istringstream in(dump(res));
  EXPECT_THROW(read_jsonl(in), CorruptRecord);
}
