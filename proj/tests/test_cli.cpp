#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "irrkit/cli.hpp"

using namespace irrkit;
using irrkit::cli::dispatch;

namespace {

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / ("irrkit_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST(Cli, PresetQuartic) {
  auto r = dispatch({"bounds", "preset", "--quartic", "--d", "19", "--contains-line"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.payload["irr"], 54);
  EXPECT_EQ(r.payload["valid"], true);
  EXPECT_EQ(r.payload["version"], kVersion);
  EXPECT_EQ(r.payload["input_digest"].get<std::string>().size(), 64u);
}

TEST(Cli, PresetBelowThresholdIsNegative) {
  auto r = dispatch({"bounds", "preset", "--quintic", "--d", "31"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.payload["valid"], false);
}

TEST(Cli, UnknownAndMalformedCommands) {
  for (const std::vector<std::string>& argv :
       {std::vector<std::string>{"bogus"}, {}, {"cb"}, {"cb", "frobnicate"}, {"--format", "text", "nope"},
        {"bounds", "d0", "--e", "x", "--zeta", "0", "--ell", "0", "--M", "1"}}) {
    auto r = dispatch(argv);
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_TRUE(r.payload.contains("error"));
    EXPECT_TRUE(r.payload.contains("version"));
  }
  EXPECT_TRUE(dispatch({"bogus"}).payload.contains("usage"));
}

TEST(Cli, CheckNonCBReturnsWitness) {
  const auto dir = scratch();
  auto g = dispatch({"cb", "generate", "grid", "--rows", "2", "--cols", "2", "--out", (dir / "g.json").string()});
  ASSERT_EQ(g.exit_code, 0);
  auto ok = dispatch({"cb", "check", "--points", (dir / "g.json").string(), "--degree", "1"});
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.payload["holds"], true);
  auto bad = dispatch({"cb", "check", "--points", (dir / "g.json").string(), "--degree", "2", "--witness"});
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_EQ(bad.payload["holds"], false);
  ASSERT_TRUE(bad.payload["witness"].is_object());
  // The witness vanishes on all points but the failing one.
  const auto& vals = bad.payload["witness_values"];
  const std::size_t fail = bad.payload["failing_index"];
  for (std::size_t i = 0; i < vals.size(); ++i) EXPECT_EQ(vals[i] == 0, i != fail);
}

TEST(Cli, MissingFileIsInputError) {
  auto r = dispatch({"cb", "check", "--points", "/nonexistent/pts.json", "--degree", "1"});
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, RandomizedCommandsNeedSeed) {
  const auto dir = scratch();
  write(dir / "cfg.json", R"({"e":1,"r":2,"max_cardinality":4,"trials":3,"recipe":{"kind":"collinear"}})");
  auto r = dispatch({"picoco", "run", "--config", (dir / "cfg.json").string(), "--out", (dir / "runs.jsonl").string()});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_FALSE(std::filesystem::exists(dir / "runs.jsonl"));

  dispatch({"cb", "generate", "grid", "--rows", "2", "--cols", "3", "--out", (dir / "g.json").string()});
  auto fit = dispatch({"curve", "fit", "--points", (dir / "g.json").string(), "--max-degree", "2", "--project"});
  EXPECT_EQ(fit.exit_code, 2);
}

TEST(Cli, PicocoRunIsDeterministicAcrossWorkers) {
  const auto dir = scratch();
  write(dir / "cfg.json",
        R"({"e":3,"r":8,"max_cardinality":27,"trials":12,"master_seed":"0","recipe":{"kind":"grid_residual"}})");
  const auto cfg = (dir / "cfg.json").string();
  auto a = dispatch({"picoco", "run", "--config", cfg, "--seed", "7", "--workers", "1", "--no-timestamp", "--out",
                     (dir / "a.jsonl").string()});
  auto b = dispatch({"picoco", "run", "--config", cfg, "--seed", "7", "--workers", "4", "--no-timestamp", "--out",
                     (dir / "b.jsonl").string()});
  ASSERT_NE(a.exit_code, 2) << a.output;
  EXPECT_EQ(a.exit_code, b.exit_code);
  EXPECT_EQ(read_file((dir / "a.jsonl").string()), read_file((dir / "b.jsonl").string()));
  for (const char* k : {"consistent", "counterexample_candidates", "generator_failed", "cardinality_lemma_violations"}) EXPECT_EQ(a.payload[k], b.payload[k]);

  auto rev = dispatch({"picoco", "reverify", "--in", (dir / "a.jsonl").string()});
  EXPECT_EQ(rev.exit_code, a.exit_code);
  EXPECT_EQ(rev.payload["trials"], 12);
}

TEST(Cli, CorruptRecordsAreInputErrors) {
  const auto dir = scratch();
  write(dir / "bad.jsonl", "{\"type\":\"header\"}\n{not json\n");
  auto r = dispatch({"picoco", "reverify", "--in", (dir / "bad.jsonl").string()});
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, PointSetRoundTripKeepsDigest) {
  const auto dir = scratch();
  auto g = dispatch({"cb", "generate", "grid", "--rows", "3", "--cols", "4", "--out", (dir / "g.json").string()});
  write(dir / "again.json", g.payload["point_set"].dump());
  auto c1 = dispatch({"cb", "check", "--points", (dir / "g.json").string(), "--degree", "4"});
  auto c2 = dispatch({"cb", "check", "--points", (dir / "again.json").string(), "--degree", "4"});
  EXPECT_EQ(c1.exit_code, 0);
  EXPECT_EQ(c1.payload["digest"], g.payload["digest"]);
  EXPECT_EQ(c2.payload["digest"], g.payload["digest"]);
  // Same argv and same bytes give the same input digest; --out and --format do not count.
  auto c3 = dispatch({"--format", "text", "cb", "check", "--points", (dir / "g.json").string(), "--degree", "4"});
  EXPECT_EQ(c3.payload["input_digest"], c1.payload["input_digest"]);
  EXPECT_NE(c2.payload["input_digest"], c1.payload["input_digest"]);
  EXPECT_NE(c3.output.find("holds: true"), std::string::npos);
}

TEST(Cli, ResidualOfGridByLine) {
  const auto dir = scratch();
  dispatch({"cb", "generate", "grid", "--rows", "3", "--cols", "3", "--out", (dir / "g.json").string()});
  // x = 0 in coefficient order x, y, z.
  auto r = dispatch({"cb", "residual", "--points", (dir / "g.json").string(), "--form", "1,0,0", "--out",
                     (dir / "res.json").string()});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(r.payload["cardinality"], 6);
  auto c = dispatch({"cb", "check", "--points", (dir / "res.json").string(), "--degree", "2"});
  EXPECT_EQ(c.exit_code, 0);
}

TEST(Cli, CurveFitAndCommon) {
  const auto dir = scratch();
  dispatch({"cb", "generate", "grid", "--rows", "2", "--cols", "3", "--out", (dir / "g.json").string()});
  auto fit = dispatch({"curve", "fit", "--points", (dir / "g.json").string(), "--max-degree", "3"});
  EXPECT_EQ(fit.exit_code, 0);
  EXPECT_EQ(fit.payload["min_degree"], 2);
  EXPECT_EQ(fit.payload["one_sided"], false);
  auto none = dispatch({"curve", "fit", "--points", (dir / "g.json").string(), "--max-degree", "1"});
  EXPECT_EQ(none.exit_code, 1);
  EXPECT_TRUE(none.payload["min_degree"].is_null());
  // x*y and x*z share x.
  auto common = dispatch({"curve", "common", "--f", "0,1,0,0,0,0", "--g", "0,0,1,0,0,0"});
  EXPECT_EQ(common.exit_code, 0);
  EXPECT_EQ(common.payload["gcd"]["degree"], 1);
}

TEST(Cli, MfdEvalFlagship) {
  auto r = dispatch({"mfd", "eval", "--model", "exe", "--class", "1,1,1"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.payload["value"], 4);
  EXPECT_EQ(r.payload["mfc"].size(), 3u);
  auto zero = dispatch({"mfd", "eval", "--model", "exe", "--class", "1,0,0", "--cap", "2"});
  EXPECT_EQ(zero.payload["value"], 0);
  EXPECT_EQ(dispatch({"mfd", "eval", "--model", "exe", "--class", "1,1"}).exit_code, 2);
}

TEST(Cli, MfdModelFileRoundTrip) {
  const auto dir = scratch();
  write(dir / "pic.json", R"({"rank":1,"labels":["H"],"gram":[[2]],"model":{"kind":"picard_rank_one","a":3}})");
  auto r = dispatch({"mfd", "eval", "--model", (dir / "pic.json").string(), "--class", "2"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(r.payload["value"], 12);
}

TEST(Cli, PropertyChecksAndPlot) {
  const auto dir = scratch();
  write(dir / "chain.json", R"({"0":"0","1":"4","2":"3"})");
  auto p = dispatch({"mfd", "check", "prop16", "--model", "exe", "--class", "1,1,1", "--perturb", "1,0,0", "--hull",
                     "1,1,1;2,1,1", "--chain", (dir / "chain.json").string()});
  EXPECT_EQ(p.payload["chain"]["monotone"], false);
  EXPECT_EQ(p.payload["chain"]["first_violation"], 2);
  EXPECT_EQ(p.payload["perturbation"]["verified"], true);
  EXPECT_EQ(p.exit_code, 1);

  auto plot = dispatch({"mfd", "plot", "--model", "exe", "--cap", "4", "--resolution", "24", "--out",
                        (dir / "x.svg").string()});
  ASSERT_EQ(plot.exit_code, 0) << plot.output;
  EXPECT_EQ(plot.payload["region_count"], 3);
  EXPECT_NE(read_file((dir / "x.svg").string()).find("<svg"), std::string::npos);
}

TEST(Cli, BoundsReportEveryTerm) {
  auto d0 = dispatch({"bounds", "d0", "--e", "3", "--zeta", "1", "--ell", "0", "--M", "4"});
  EXPECT_EQ(d0.payload["d0"]["value"], 15);
  EXPECT_EQ(d0.payload["d0"]["terms"].size(), 8u);
  auto irr = dispatch({"bounds", "irr", "--e", "3", "--zeta", "1", "--ell", "0", "--M", "4", "--d", "19", "--regular"});
  EXPECT_EQ(irr.payload["lower_exclusive"], 53);
  EXPECT_EQ(irr.payload["upper"], 57);
  EXPECT_TRUE(irr.payload.contains("note"));
  auto ci = dispatch({"bounds", "ci", "--degrees", "5,100", "--epsilon", "1/10"});
  EXPECT_EQ(ci.payload["lower"], 450);
  EXPECT_EQ(ci.payload["upper"], 500);
  auto card = dispatch({"bounds", "card", "--e", "3", "--r", "10"});
  EXPECT_EQ(card.payload["picoco"], 35);
  auto gamma = dispatch({"bounds", "gamma", "--d", "100", "--zeta", "1", "--f", "3"});
  EXPECT_EQ(gamma.payload["bound"], 296);

  const auto dir = scratch();
  write(dir / "t.json", R"({"G":{"3":0},"H":{"3":5}})");
  auto missing = dispatch({"bounds", "d0", "--e", "3", "--zeta", "1", "--ell", "0", "--M", "4", "--table",
                           (dir / "t.json").string()});
  EXPECT_EQ(missing.exit_code, 2);
}
