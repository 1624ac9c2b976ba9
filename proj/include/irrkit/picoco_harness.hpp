#pragma once

// Randomized search for CB(r) point sets of bounded size that lie on no degree-e plane curve.
// Every generated set carries a construction certificate (complete-intersection grid, residuals
// by lines, disjoint unions, coordinate changes) and is re-checked exactly.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "irrkit/cayley_bacharach.hpp"
#include "irrkit/curve_search.hpp"
#include "irrkit/io.hpp"
#include "irrkit/random.hpp"

namespace irrkit::picoco {

enum class RecipeKind { GridResidual, Collinear };

struct GeneratorRecipe {
  RecipeKind kind = RecipeKind::GridResidual;
  /// Largest grid side tried; 0 means r + 2.
  int max_side = 0;
  bool allow_union = true;
};

/// Largest |Gamma| for which the question is asked: (e+1) r - (e^2 - e - 1).
inline long question_bound(long e, long r) { return (e + 1) * r - (e * e - e - 1); }

struct ExperimentConfig {
  int e = 1;
  int r = 0;
  long max_cardinality = 0;
  GeneratorRecipe recipe;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;

  void validate() const {
    if (e < 1) throw ConfigError("e must be at least 1");
    if (r < 0) throw ConfigError("r must be nonnegative");
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (max_cardinality > question_bound(e, r))
      throw ConfigError("max_cardinality " + std::to_string(max_cardinality) + " exceeds (e+1)r-(e^2-e-1) = " +
                        std::to_string(question_bound(e, r)));
    if (max_cardinality < r + 2)
      throw ConfigError("max_cardinality below r+2: every nonempty CB(r) set has at least r+2 points");
    if (recipe.max_side < 0) throw ConfigError("max_side must be nonnegative");
  }
};

inline json config_json(const ExperimentConfig& c) {
  return json{{"e", c.e},
              {"r", c.r},
              {"max_cardinality", c.max_cardinality},
              {"trials", c.trials},
              {"master_seed", std::to_string(c.master_seed)},
              {"recipe",
               {{"kind", c.recipe.kind == RecipeKind::GridResidual ? "grid_residual" : "collinear"},
                {"max_side", c.recipe.max_side},
                {"allow_union", c.recipe.allow_union}}}};
}

inline ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig c;
    c.e = j.at("e").get<int>();
    c.r = j.at("r").get<int>();
    c.max_cardinality = j.at("max_cardinality").get<long>();
    const auto& t = j.at("trials");
    if (!t.is_number_integer() || t.get<long>() < 0) throw ConfigError("trials must be a nonnegative integer");
    c.trials = t.get<std::size_t>();
    if (j.contains("master_seed")) {
      const auto& s = j.at("master_seed");
      c.master_seed = s.is_string() ? std::stoull(s.get<std::string>()) : s.get<std::uint64_t>();
    }
    if (j.contains("recipe")) {
      const auto& r = j.at("recipe");
      const std::string kind = r.value("kind", "grid_residual");
      if (kind == "grid_residual")
        c.recipe.kind = RecipeKind::GridResidual;
      else if (kind == "collinear")
        c.recipe.kind = RecipeKind::Collinear;
      else
        throw ConfigError("unknown recipe kind '" + kind + "'");
      c.recipe.max_side = r.value("max_side", 0);
      c.recipe.allow_union = r.value("allow_union", true);
    }
    return c;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed experiment config: ") + ex.what());
  }
}

enum class TrialStatus { Consistent, CounterexampleCandidate, GeneratorFailed };

inline const char* status_name(TrialStatus s) {
  switch (s) {
    case TrialStatus::Consistent:
      return "consistent";
    case TrialStatus::CounterexampleCandidate:
      return "counterexample_candidate";
    case TrialStatus::GeneratorFailed:
      return "generator_failed";
  }
  return "?";
}

inline TrialStatus status_from_name(const std::string& s) {
  if (s == "consistent") return TrialStatus::Consistent;
  if (s == "counterexample_candidate") return TrialStatus::CounterexampleCandidate;
  if (s == "generator_failed") return TrialStatus::GeneratorFailed;
  throw InputError("unknown trial status '" + s + "'");
}

struct TrialRecord {
  std::size_t trial_index = 0;
  std::string point_set_digest;
  std::size_t cardinality = 0;
  bool cb_verified = false;
  /// |Gamma| >= r + 2 (or Gamma empty).
  bool cardinality_lemma_ok = true;
  std::optional<int> min_curve_degree;  // absent when no curve of degree <= e passes through
  TrialStatus status = TrialStatus::GeneratorFailed;
  PointSet points;
  std::string trace;
};

struct Report {
  std::size_t trials = 0;
  std::size_t consistent = 0;
  std::size_t candidates = 0;
  std::size_t generator_failed = 0;
  std::size_t lemma_violations = 0;
  std::vector<std::size_t> candidate_trials;
};

struct GeneratedSet {
  PointSet points{2};
  std::string trace;
};

namespace detail {

/// Product of a few random elementary matrices: integral with determinant 1.
inline std::vector<IntVector> random_unimodular(Rng& rng, int steps = 4) {
  std::vector<IntVector> m{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(rng.uniform(0, 2));
    const auto j = static_cast<std::size_t>(rng.uniform(0, 2));
    if (i == j) continue;
    const long k = rng.uniform(-2, 2);
    for (std::size_t c = 0; c < 3; ++c) m[i][c] += k * m[j][c];
  }
  return m;
}

inline std::vector<IntVector> translation(long s, long t) { return {{1, 0, Integer(s)}, {0, 1, Integer(t)}, {0, 0, 1}}; }

/// Line through two points of P^2 (cross product).
inline Form line_through(const ProjPoint& p, const ProjPoint& q) {
  return Form::linear({p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]});
}

/// A CB(r) set with at most `limit` points, or nullopt when the random draw overshoots.
/// Starts from an a x b grid (CB(a+b-3)) and spends the surplus a+b-3-r on residuals by lines.
inline std::optional<GeneratedSet> grid_piece(Rng& rng, int r, long limit, int max_side) {
  const int a = static_cast<int>(rng.uniform(1, std::max(1, std::min(max_side, r + 2))));
  const int b_min = std::max(1, r + 3 - a);
  const int b = static_cast<int>(rng.uniform(b_min, b_min + 2));
  GeneratedSet out{grid_generator(a, b), "grid(" + std::to_string(a) + "," + std::to_string(b) + ")"};
  int budget = a + b - 3 - r;
  for (int step = 0; budget > 0 && step < 64; ++step) {
    const bool too_big = static_cast<long>(out.points.size()) > limit;
    const int choice = too_big ? 1 + static_cast<int>(rng.uniform(0, 1)) : static_cast<int>(rng.uniform(0, 3));
    if (choice == 0) break;
    Form line;
    std::string name;
    if (choice == 1) {
      const long i = rng.uniform(0, a - 1);
      line = vertical_line(i);
      name = "x-" + std::to_string(i) + "z";
    } else if (choice == 2) {
      const long j = rng.uniform(0, b - 1);
      line = horizontal_line(j);
      name = "y-" + std::to_string(j) + "z";
    } else {
      if (out.points.size() < 2) break;
      const auto n = static_cast<long>(out.points.size());
      const long i = rng.uniform(0, n - 1);
      long k = rng.uniform(0, n - 2);
      if (k >= i) ++k;
      line = line_through(out.points[static_cast<std::size_t>(i)], out.points[static_cast<std::size_t>(k)]).normalized();
      name = line.to_string();
    }
    PointSet next = residual_set(out.points, line);
    if (next.empty() || next.size() == out.points.size()) continue;  // keep the set nonempty and moving
    out.points = std::move(next);
    out.trace += " residual(" + name + ")";
    --budget;
  }
  if (static_cast<long>(out.points.size()) > limit) return std::nullopt;
  return out;
}

inline GeneratedSet single_piece(Rng& rng, int r, long limit, int max_side) {
  for (int attempt = 0; attempt < 64; ++attempt)
    if (auto p = grid_piece(rng, r, limit, max_side)) return *p;
  return GeneratedSet{grid_generator(1, r + 2), "grid(1," + std::to_string(r + 2) + ")"};
}

}  // namespace detail

/// Draws a point set in P^2 that satisfies CB(r) by construction and has at most max_cardinality points.
inline GeneratedSet generate_cb_set(const GeneratorRecipe& recipe, int r, long max_cardinality, Rng& rng) {
  const int max_side = recipe.max_side > 0 ? recipe.max_side : r + 2;
  GeneratedSet out;
  if (recipe.kind == RecipeKind::Collinear) {
    const long b = rng.uniform(r + 2, max_cardinality);
    out = GeneratedSet{grid_generator(1, static_cast<int>(b)), "grid(1," + std::to_string(b) + ")"};
  } else if (recipe.allow_union && 2L * (r + 2) <= max_cardinality && rng.uniform(0, 3) == 0) {
    GeneratedSet first = detail::single_piece(rng, r, max_cardinality - (r + 2), max_side);
    GeneratedSet second =
        detail::single_piece(rng, r, max_cardinality - static_cast<long>(first.points.size()), max_side);
    const auto shift = detail::translation(rng.uniform(-40, 40), rng.uniform(41, 80));
    PointSet moved = transform_points(transform_points(second.points, detail::random_unimodular(rng)), shift);
    try {
      out.points = union_generator(first.points, moved);
      out.trace = "union[" + first.trace + " | moved " + second.trace + "]";
    } catch (const OverlapError&) {
      out = std::move(first);
    }
  } else {
    out = detail::single_piece(rng, r, max_cardinality, max_side);
  }
  out.points = transform_points(out.points, detail::random_unimodular(rng));
  out.trace += " then coordinate change";
  return out;
}

/// Exact checks on one set: CB(r), the r+2 cardinality lemma, and the minimal curve degree up to e.
inline TrialRecord classify(std::size_t index, GeneratedSet set, int e, int r) {
  TrialRecord rec;
  rec.trial_index = index;
  rec.points = std::move(set.points);
  rec.trace = std::move(set.trace);
  rec.point_set_digest = point_set_digest(rec.points);
  rec.cardinality = rec.points.size();
  rec.cb_verified = satisfies_cb(rec.points, r).holds;
  rec.cardinality_lemma_ok = rec.points.empty() || static_cast<long>(rec.points.size()) >= r + 2L;
  if (auto m = min_interpolating_degree(rec.points, e)) rec.min_curve_degree = m->degree;
  if (!rec.cb_verified)
    rec.status = TrialStatus::GeneratorFailed;
  else if (!rec.min_curve_degree || *rec.min_curve_degree > e)
    rec.status = TrialStatus::CounterexampleCandidate;
  else
    rec.status = TrialStatus::Consistent;
  return rec;
}

inline Report summarize(const std::vector<TrialRecord>& records) {
  Report rep;
  rep.trials = records.size();
  for (const auto& rec : records) {
    switch (rec.status) {
      case TrialStatus::Consistent:
        ++rep.consistent;
        break;
      case TrialStatus::CounterexampleCandidate:
        ++rep.candidates;
        rep.candidate_trials.push_back(rec.trial_index);
        break;
      case TrialStatus::GeneratorFailed:
        ++rep.generator_failed;
        break;
    }
    if (rec.cb_verified && !rec.cardinality_lemma_ok) ++rep.lemma_violations;
  }
  return rep;
}

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // in trial order
  Report report;
};

/// Worker count from IRRKIT_WORKERS, defaulting to the hardware concurrency. Affects speed only.
inline unsigned default_workers() {
  if (const char* env = std::getenv("IRRKIT_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs every trial; trial i draws from Rng(master_seed ^ i), so results do not depend on scheduling.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers = default_workers()) {
  cfg.validate();
  ExperimentResult res;
  res.config = cfg;
  res.records.resize(cfg.trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) {
      Rng rng(cfg.master_seed ^ static_cast<std::uint64_t>(i));
      res.records[i] = classify(i, generate_cb_set(cfg.recipe, cfg.r, cfg.max_cardinality, rng), cfg.e, cfg.r);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cfg.trials)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  res.report = summarize(res.records);
  return res;
}

inline json record_json(const TrialRecord& r) {
  return json{{"type", "trial"},
              {"trial", r.trial_index},
              {"digest", r.point_set_digest},
              {"cardinality", r.cardinality},
              {"cb_verified", r.cb_verified},
              {"cardinality_lemma_ok", r.cardinality_lemma_ok},
              {"min_curve_degree", r.min_curve_degree ? json(*r.min_curve_degree) : json(nullptr)},
              {"status", status_name(r.status)},
              {"trace", r.trace},
              {"points", point_set_json(r.points)}};
}

inline json report_json(const Report& rep) {
  json cands = json::array();
  for (auto t : rep.candidate_trials) cands.push_back({{"trial", t}, {"label", "candidate pending human review"}});
  return json{{"trials", rep.trials},
              {"consistent", rep.consistent},
              {"counterexample_candidates", rep.candidates},
              {"generator_failed", rep.generator_failed},
              {"cardinality_lemma_violations", rep.lemma_violations},
              {"candidates", cands}};
}

/// Header line (config, version, optional timestamp) followed by one record per line in trial order.
inline void write_jsonl(std::ostream& out, const ExperimentConfig& cfg, const std::vector<TrialRecord>& records,
                        const std::optional<std::string>& timestamp = std::nullopt) {
  json header{{"type", "header"}, {"version", kVersion}, {"config", config_json(cfg)}};
  if (timestamp) header["timestamp"] = *timestamp;
  out << header.dump() << '\n';
  for (const auto& r : records) out << record_json(r).dump() << '\n';
}

struct RecordFile {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
};

/// Parses a JSONL run file. Any malformed line raises CorruptRecord with its 1-based line number.
inline RecordFile read_jsonl(std::istream& in) {
  RecordFile file;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorruptRecord(lineno, e.what());
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw CorruptRecord(lineno, "second header line");
        file.config = config_from_json(j.at("config"));
        have_header = true;
        continue;
      }
      if (type != "trial") throw CorruptRecord(lineno, "unknown record type '" + type + "'");
      if (!have_header) throw CorruptRecord(lineno, "trial record before header");
      TrialRecord r;
      r.trial_index = j.at("trial").get<std::size_t>();
      r.point_set_digest = j.at("digest").get<std::string>();
      r.cardinality = j.at("cardinality").get<std::size_t>();
      r.cb_verified = j.at("cb_verified").get<bool>();
      r.cardinality_lemma_ok = j.at("cardinality_lemma_ok").get<bool>();
      if (!j.at("min_curve_degree").is_null()) r.min_curve_degree = j.at("min_curve_degree").get<int>();
      r.status = status_from_name(j.at("status").get<std::string>());
      r.trace = j.value("trace", "");
      r.points = point_set_from_json(j.at("points"));
      if (point_set_digest(r.points) != r.point_set_digest) throw CorruptRecord(lineno, "digest does not match points");
      if (r.points.size() != r.cardinality) throw CorruptRecord(lineno, "cardinality does not match points");
      file.records.push_back(std::move(r));
    } catch (const CorruptRecord&) {
      throw;
    } catch (const std::exception& e) {
      throw CorruptRecord(lineno, e.what());
    }
  }
  if (!have_header) throw CorruptRecord(lineno == 0 ? 1 : lineno, "missing header line");
  return file;
}

/// Re-runs the exact checks for every counterexample candidate from its stored points and
/// reclassifies it. Other records are left as they are. Idempotent.
inline ExperimentResult reverify(RecordFile file, const std::optional<ExperimentConfig>& cfg = std::nullopt) {
  ExperimentResult res;
  res.config = cfg ? *cfg : file.config;
  for (auto& rec : file.records) {
    if (rec.status == TrialStatus::CounterexampleCandidate) {
      GeneratedSet set{rec.points, rec.trace};
      rec = classify(rec.trial_index, std::move(set), res.config.e, res.config.r);
    }
  }
  res.records = std::move(file.records);
  res.report = summarize(res.records);
  return res;
}

}  // namespace irrkit::picoco
