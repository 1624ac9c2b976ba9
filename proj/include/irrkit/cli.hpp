#pragma once

// Command-line front end: `irrkit <cb|curve|picoco|mfd|bounds> ...`. dispatch() never throws;
// every failure becomes exit code 2 with an "error" field in the payload.

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irrkit/bounds.hpp"
#include "irrkit/cayley_bacharach.hpp"
#include "irrkit/cross_section.hpp"
#include "irrkit/curve_search.hpp"
#include "irrkit/io.hpp"
#include "irrkit/mfd_cone.hpp"
#include "irrkit/picoco_harness.hpp"

namespace irrkit::cli {

enum Exit : int { kOk = 0, kNegative = 1, kInputError = 2, kCandidates = 3 };

struct CommandResult {
  int exit_code = kOk;
  json payload;
  /// What the tool prints on stdout (payload rendered as JSON or text).
  std::string output;
};

/// Top-level fields as "key: value" lines; nested values stay compact JSON.
inline std::string to_text(const json& j) {
  std::string out;
  for (const auto& [k, v] : j.items()) out += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  return out;
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("error writing '" + path + "'");
}

namespace detail {

/// Accumulates everything the result depends on: normalized argv and the bytes of input files.
struct Inputs {
  std::string material;
  std::string read(const std::string& path) {
    std::string text = read_file(path);
    material += "\x1e" + path + "\x1f" + text;
    return text;
  }
  PointSet points(const std::string& path) { return point_set_from_json(parse_json_text(read(path), path)); }
};

inline std::vector<long> parse_long_list(const std::string& csv) {
  std::vector<long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Integer z = parse_integer(item);
    if (!z.fits_slong_p()) throw InputError("value out of range: " + item);
    out.push_back(z.get_si());
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline json cb_report_json(const CBReport& rep, const PointSet& g, bool values) {
  json j{{"holds", rep.holds}, {"r", rep.r}, {"cardinality", g.size()}};
  j["failing_index"] = rep.failing_index ? json(*rep.failing_index) : json(nullptr);
  j["failing_point"] = rep.failing_point ? int_vector_json(rep.failing_point->coords(), true) : json(nullptr);
  j["witness"] = rep.witness_form ? form_json(*rep.witness_form) : json(nullptr);
  if (values && rep.witness_form) {
    json vals = json::array();
    for (const auto& p : g) vals.push_back(json_integer(rep.witness_form->evaluate(p)));
    j["witness_values"] = vals;
  }
  return j;
}

}  // namespace detail

inline CommandResult dispatch(const std::vector<std::string>& argv) {
  CLI::App app{"Exact tools for Cayley-Bacharach sets, minimal fibering degrees and irrationality bounds", "irrkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json", out_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "Output file (records, SVG or point set for commands that produce one)");

  // All option storage lives here so the run step below can read it.
  std::string points_file, form_csv, config_file, in_file, model_name = "exe", class_csv, cap_str, table_file,
                                                                degrees_csv, epsilon_str, perturb_csv, hull_csv,
                                                                weights_csv, chain_file, form2_csv;
  int degree = 0, rows = 0, cols = 0, max_degree = 0;
  std::size_t trials = 3, resolution = 48;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  bool witness = false, project = false, no_timestamp = false, quartic = false, quintic = false,
       contains_line = false, picoco_mode = false, regular = false;
  long e = 1, zeta = 0, ell = 0, M = 1, d = 1, r = 0, f = 1;

  auto* cb = app.add_subcommand("cb", "Cayley-Bacharach checks and generators");
  cb->require_subcommand(1);
  auto* cb_check = cb->add_subcommand("check", "Test CB(r) for a point set");
  cb_check->add_option("--points", points_file)->required();
  cb_check->add_option("--degree", degree)->required();
  cb_check->add_flag("--witness", witness, "Also list the witness form's value at every point");
  auto* cb_gen = cb->add_subcommand("generate", "Generate certified CB sets");
  cb_gen->require_subcommand(1);
  auto* cb_grid = cb_gen->add_subcommand("grid", "a x b grid, CB(a+b-3)");
  cb_grid->add_option("--rows", rows)->required();
  cb_grid->add_option("--cols", cols)->required();
  auto* cb_res = cb->add_subcommand("residual", "Points of the set where a form does not vanish");
  cb_res->add_option("--points", points_file)->required();
  cb_res->add_option("--form", form_csv, "Coefficients in graded-lex order")->required();

  auto* curve = app.add_subcommand("curve", "Plane curves through point sets");
  curve->require_subcommand(1);
  auto* curve_fit = curve->add_subcommand("fit", "Minimal degree of a curve through the points");
  curve_fit->add_option("--points", points_file)->required();
  curve_fit->add_option("--max-degree", max_degree)->required();
  curve_fit->add_flag("--project", project, "Test generic projections to P^2 (points in P^N, N >= 3)");
  curve_fit->add_option("--trials", trials);
  auto* seed_opt_fit = curve_fit->add_option("--seed", seed);
  auto* curve_common = curve->add_subcommand("common", "Common component of two plane curves");
  curve_common->add_option("--f", form_csv)->required();
  curve_common->add_option("--g", form2_csv)->required();

  auto* pic = app.add_subcommand("picoco", "Randomized search for CB sets off low-degree curves");
  pic->require_subcommand(1);
  auto* pic_run = pic->add_subcommand("run", "Run an experiment and write JSONL records");
  pic_run->add_option("--config", config_file)->required();
  auto* seed_opt_run = pic_run->add_option("--seed", seed, "Master seed (overrides the config file)");
  pic_run->add_option("--workers", workers, "Worker threads (default: IRRKIT_WORKERS or hardware)");
  pic_run->add_flag("--no-timestamp", no_timestamp, "Omit the header timestamp");
  auto* pic_rev = pic->add_subcommand("reverify", "Re-check stored candidates");
  pic_rev->add_option("--in", in_file)->required();

  auto* mfd = app.add_subcommand("mfd", "Minimal fibering degree on lattice models");
  mfd->require_subcommand(1);
  auto* mfd_eval_cmd = mfd->add_subcommand("eval", "mfd(H), minimizers and certificate");
  mfd_eval_cmd->add_option("--model", model_name, "Model file or 'exe'");
  mfd_eval_cmd->add_option("--class", class_csv)->required();
  mfd_eval_cmd->add_option("--cap", cap_str, "Enumeration cap (default: automatic)");
  auto* mfd_enum = mfd->add_subcommand("enumerate", "Fiber classes with H.C <= cap");
  mfd_enum->add_option("--model", model_name);
  mfd_enum->add_option("--class", class_csv)->required();
  mfd_enum->add_option("--cap", cap_str)->required();
  auto* mfd_plot = mfd->add_subcommand("plot", "Cross-section regions of the E x E picture as SVG");
  mfd_plot->add_option("--model", model_name);
  mfd_plot->add_option("--cap", cap_str)->required();
  mfd_plot->add_option("--resolution", resolution);
  auto* mfd_check = mfd->add_subcommand("check", "Property checks");
  mfd_check->require_subcommand(1);
  auto* prop16 = mfd_check->add_subcommand("prop16", "Homogeneity, perturbation, hull linearity, mfd_l chain");
  prop16->add_option("--model", model_name);
  prop16->add_option("--class", class_csv)->required();
  prop16->add_option("--perturb", perturb_csv, "Divisor E for the perturbation threshold");
  prop16->add_option("--hull", hull_csv, "Classes separated by ';'");
  prop16->add_option("--weights", weights_csv, "Positive weights for --hull");
  prop16->add_option("--chain", chain_file, "JSON object {l: mfd_l} to check for monotonicity");

  auto* bnd = app.add_subcommand("bounds", "Explicit constants and bounds");
  bnd->require_subcommand(1);
  auto add_fns = [&](CLI::App* c) {
    auto* p = c->add_flag("--picoco", picoco_mode, "G(e) = 0, H(e) = e^2 - e - 1 (default)");
    c->add_option("--table", table_file, "JSON {\"G\": {e: v}, \"H\": {e: v}}")->excludes(p);
  };
  auto add_gc = [&](CLI::App* c, bool with_d) {
    c->add_option("--e", e)->required();
    c->add_option("--zeta", zeta)->required();
    c->add_option("--ell", ell)->required();
    c->add_option("--M", M)->required();
    if (with_d) c->add_option("--d", d)->required();
  };
  auto* b_d0 = bnd->add_subcommand("d0", "Thresholds d0 and d0'");
  add_gc(b_d0, false);
  add_fns(b_d0);
  auto* b_irr = bnd->add_subcommand("irr", "Bounds on irr(X) above the threshold");
  add_gc(b_irr, true);
  add_fns(b_irr);
  b_irr->add_flag("--regular", regular, "Assert the regularity hypothesis on minimal fibrations");
  auto* b_gamma = bnd->add_subcommand("gamma", "Lower bound on the fiber cardinality");
  b_gamma->add_option("--d", d)->required();
  b_gamma->add_option("--zeta", zeta)->required();
  b_gamma->add_option("--f", f)->required();
  add_fns(b_gamma);
  auto* b_card = bnd->add_subcommand("card", "Cardinality bounds for CB(r) sets off degree-e curves");
  b_card->add_option("--e", e)->required();
  b_card->add_option("--r", r)->required();
  add_fns(b_card);
  auto* b_ci = bnd->add_subcommand("ci", "Complete intersection product bounds");
  b_ci->add_option("--degrees", degrees_csv)->required();
  b_ci->add_option("--epsilon", epsilon_str)->required();
  auto* b_pre = bnd->add_subcommand("preset", "Quartic and quintic threefolds");
  auto* q4 = b_pre->add_flag("--quartic", quartic);
  b_pre->add_flag("--quintic", quintic)->excludes(q4);
  b_pre->add_option("--d", d)->required();
  b_pre->add_flag("--contains-line", contains_line);

  for (auto* sub : {cb, cb_check, cb_gen, cb_grid, cb_res, curve, curve_fit, curve_common, pic, pic_run, pic_rev, mfd,
                    mfd_eval_cmd, mfd_enum, mfd_plot, mfd_check, prop16, bnd, b_d0, b_irr, b_gamma, b_card, b_ci, b_pre})
    sub->fallthrough();

  CommandResult res;
  detail::Inputs inputs;
  auto finish = [&](int code, json payload) {
    res.exit_code = code;
    std::string argv_material;
    for (std::size_t i = 0; i < argv.size(); ++i) {
      if ((argv[i] == "--out" || argv[i] == "--format") && i + 1 < argv.size()) {
        ++i;
        continue;
      }
      argv_material += argv[i] + "\x1f";
    }
    json full{{"version", kVersion}, {"input_digest", sha256_hex(argv_material + inputs.material)}};
    for (auto& [k, v] : payload.items()) full[k] = v;
    res.payload = std::move(full);
    res.output = format == "text" ? to_text(res.payload) : res.payload.dump(2) + "\n";
    return res;
  };

  // First positional token names the command; global options may precede it.
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--format" || a == "--out") {
      ++i;
      continue;
    }
    if (a.starts_with("-")) continue;
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == a;
    if (!known) return finish(kInputError, json{{"error", "unknown command '" + a + "'"}, {"usage", app.help()}});
    break;
  }

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return finish(kOk, json{{"usage", app.help()}});
  } catch (const CLI::ParseError& err) {
    return finish(kInputError, json{{"error", err.what()}, {"usage", app.help()}});
  }

  auto fns = [&]() {
    if (table_file.empty()) return bounds::InterpolationFunctions::picoco();
    return bounds::table_from_json(parse_json_text(inputs.read(table_file), table_file));
  };
  auto emit_payload_file = [&](const json& payload) {
    if (!out_path.empty()) write_text_file(out_path, payload.dump(2) + "\n");
  };

  try {
    if (*cb_check) {
      const PointSet g = inputs.points(points_file);
      const CBReport rep = satisfies_cb(g, degree);
      json p = detail::cb_report_json(rep, g, witness);
      p["digest"] = point_set_digest(g);
      emit_payload_file(p);
      return finish(rep.holds ? kOk : kNegative, p);
    }
    if (*cb_grid || *cb_res) {
      PointSet g = *cb_grid ? grid_generator(rows, cols)
                            : [&] {
                                const PointSet in = inputs.points(points_file);
                                return residual_set(in, parse_form(in.ambient_dim(), form_csv));
                              }();
      const json pts = point_set_json(g);
      if (!out_path.empty()) write_text_file(out_path, pts.dump(2) + "\n");
      json p{{"cardinality", g.size()}, {"digest", point_set_digest(g)}, {"point_set", pts}};
      if (*cb_grid) p["certified_degree"] = rows + cols - 3;
      return finish(kOk, p);
    }
    if (*curve_fit) {
      const PointSet g = inputs.points(points_file);
      json p;
      int code = kOk;
      if (project) {
        if (seed_opt_fit->count() == 0) throw InputError("--project needs an explicit --seed");
        const ProjectedVerdict v = projected_curve_test(g, max_degree, trials, seed);
        p = json{{"pass", v.pass}, {"one_sided", v.one_sided}, {"trials", v.trials}, {"max_degree", max_degree}};
        p["failing_trial"] = v.failing_trial ? json(*v.failing_trial) : json(nullptr);
        code = v.pass ? kOk : kNegative;
      } else {
        if (g.ambient_dim() != 2)
          throw AmbientDimError("points live in P^" + std::to_string(g.ambient_dim()) +
                                "; exact fitting is in P^2, use --project with --seed for N >= 3");
        const auto m = min_interpolating_degree(g, max_degree);
        p = json{{"min_degree", m ? json(m->degree) : json(nullptr)},
                 {"witness", m ? form_json(m->witness) : json(nullptr)},
                 {"unique", m ? json(m->unique) : json(nullptr)},
                 {"one_sided", false},
                 {"max_degree", max_degree}};
        code = m ? kOk : kNegative;
      }
      emit_payload_file(p);
      return finish(code, p);
    }
    if (*curve_common) {
      const Form a = parse_form(2, form_csv), b = parse_form(2, form2_csv);
      const auto g = shared_component_check(a, b);
      json p{{"shared", g.has_value()}, {"gcd", g ? form_json(*g) : json(nullptr)}};
      emit_payload_file(p);
      return finish(g ? kOk : kNegative, p);
    }
    if (*pic_run) {
      if (seed_opt_run->count() == 0) throw InputError("picoco run needs an explicit --seed");
      if (out_path.empty()) throw InputError("picoco run needs --out for the JSONL records");
      picoco::ExperimentConfig cfg = picoco::config_from_json(parse_json_text(inputs.read(config_file), config_file));
      cfg.master_seed = seed;
      const auto result = picoco::run_experiment(cfg, workers ? workers : picoco::default_workers());
      std::ostringstream jsonl;
      picoco::write_jsonl(jsonl, cfg, result.records, no_timestamp ? std::nullopt : std::optional(utc_timestamp()));
      write_text_file(out_path, jsonl.str());
      json p = picoco::report_json(result.report);
      p["config"] = picoco::config_json(cfg);
      p["records"] = out_path;
      return finish(result.report.candidates ? kCandidates : kOk, p);
    }
    if (*pic_rev) {
      std::istringstream in(inputs.read(in_file));
      auto result = picoco::reverify(picoco::read_jsonl(in));
      if (!out_path.empty()) {
        std::ostringstream jsonl;
        picoco::write_jsonl(jsonl, result.config, result.records);
        write_text_file(out_path, jsonl.str());
      }
      json p = picoco::report_json(result.report);
      return finish(result.report.candidates ? kCandidates : kOk, p);
    }
    if (*mfd_eval_cmd || *mfd_enum || *prop16 || *mfd_plot) {
      if (model_name != "exe") inputs.read(model_name);
      const FiberClassModel model = load_model(model_name);
      if (*mfd_plot) {
        const CrossSection cs = cross_section_regions(model, parse_rational(cap_str), resolution);
        const std::string svg = render_svg(cs);
        json p = cross_section_json(cs);
        p["region_count"] = cs.regions.size();
        if (out_path.empty())
          p["svg"] = svg;
        else
          write_text_file(out_path, svg);
        return finish(kOk, p);
      }
      const DivisorClass h = parse_class(model, class_csv);
      if (*mfd_enum) {
        const Enumeration en = enumerate_fiber_classes(model, h, parse_rational(cap_str));
        json cls = json::array();
        for (const auto& c : en.classes) cls.push_back({{"class", divisor_json(c)}, {"degree", json_rational(pair(h, c))}});
        json p{{"classes", cls}, {"complete", en.complete}};
        emit_payload_file(p);
        return finish(kOk, p);
      }
      if (*mfd_eval_cmd) {
        const auto r = mfd_eval(model, h, cap_str.empty() ? std::nullopt : std::optional(parse_rational(cap_str)));
        json p = mfd_result_json(r);
        p["class"] = divisor_json(h);
        emit_payload_file(p);
        return finish(r.status == MfdStatus::Value ? kOk : kNegative, p);
      }
      // prop16
      json p;
      bool all = true;
      const MfdResult base = mfd_eval(model, h);
      p["mfd"] = mfd_result_json(base);
      json homog = json::array();
      for (long t : {2, 3, 5}) {
        const MfdResult scaled = mfd_eval(model, Rational(t) * h);
        const bool ok = scaled.value == t * base.value && scaled.mfc == base.mfc;
        all = all && ok;
        homog.push_back({{"t", t}, {"value", json_rational(scaled.value)}, {"pass", ok}});
      }
      p["homogeneity"] = homog;
      if (!perturb_csv.empty()) {
        const auto rep = mfc_perturbation_threshold(model, h, parse_class(model, perturb_csv));
        json perturbed = json::array();
        for (const auto& c : rep.mfc_perturbed) perturbed.push_back(divisor_json(c));
        p["perturbation"] = {{"d_min", json_integer(rep.d_min)}, {"verified", rep.verified}, {"mfc_perturbed", perturbed}};
        all = all && rep.verified;
      }
      if (!hull_csv.empty()) {
        std::vector<DivisorClass> hs;
        for (const auto& s : detail::split(hull_csv, ';')) hs.push_back(parse_class(model, s));
        std::vector<Rational> w;
        if (weights_csv.empty())
          w.assign(hs.size(), Rational(1));
        else
          for (const auto& s : detail::split(weights_csv, ',')) w.push_back(parse_rational(s));
        const auto rep = hull_linearity_check(model, hs, w);
        json common = json::array();
        for (const auto& c : rep.common_mfc) common.push_back(divisor_json(c));
        p["hull"] = {{"combination", divisor_json(rep.combination)},
                     {"value", json_rational(rep.value)},
                     {"expected", json_rational(rep.expected)},
                     {"common_mfc", common},
                     {"pass", rep.pass}};
        all = all && rep.pass;
      }
      if (!chain_file.empty()) {
        const json cj = parse_json_text(inputs.read(chain_file), chain_file);
        std::map<long, Rational> table;
        for (const auto& [k, v] : cj.items()) table[std::stol(k)] = rational_from_json(v);
        const auto bad = mfd_chain_violation(table);
        p["chain"] = {{"monotone", !bad}, {"first_violation", bad ? json(*bad) : json(nullptr)}};
        all = all && !bad;
      }
      p["pass"] = all;
      emit_payload_file(p);
      return finish(all ? kOk : kNegative, p);
    }
    if (*b_d0) {
      const bounds::GeometryConstants gc{e, zeta, ell, M, 1};
      json p{{"d0", bounds::terms_json(bounds::d0(gc, fns()))}, {"d0_picoco", bounds::terms_json(bounds::d0_picoco(gc))}};
      emit_payload_file(p);
      return finish(kOk, p);
    }
    if (*b_irr) {
      const bounds::GeometryConstants gc{e, zeta, ell, M, d};
      const auto f_ = fns();
      const auto b = bounds::irr_bounds(gc, f_);
      json p{{"lower_exclusive", json_integer(b.lower_exclusive)},
             {"upper", json_integer(b.upper)},
             {"d0", bounds::terms_json(bounds::d0(gc, f_))},
             {"terms", {{"d*e", json_integer(Integer(d) * e)},
                        {"zeta*e", json_integer(Integer(zeta) * e)},
                        {"H(e-1)", json_integer(f_.H(e - 1))},
                        {"ell*e", json_integer(Integer(ell) * e)}}},
             {"warnings", b.warnings},
             {"regularity_asserted", regular}};
      if (regular) p["note"] = "irr(X) = mfd(Y, X) taken as given under the user-asserted regularity hypothesis";
      emit_payload_file(p);
      return finish(kOk, p);
    }
    if (*b_gamma) {
      const auto f_ = fns();
      json p{{"bound", json_integer(bounds::gamma_lower_bound(d, zeta, f, f_))},
             {"terms", {{"(d-zeta)*f", json_integer(Integer(d - zeta) * f)}, {"H(f-1)", json_integer(f_.H(f - 1))}}}};
      emit_payload_file(p);
      return finish(kOk, p);
    }
    if (*b_card) {
      const auto c = bounds::cardinality_bounds(e, r, fns());
      json p{{"banerjee", json_integer(c.banerjee)}, {"picoco", json_integer(c.picoco)}, {"warnings", c.warnings}};
      emit_payload_file(p);
      return finish(kOk, p);
    }
    if (*b_ci) {
      const auto b = bounds::ci_product_bounds(detail::parse_long_list(degrees_csv), parse_rational(epsilon_str));
      json p{{"lower", json_rational(b.lower)}, {"upper", json_integer(b.upper)}, {"caveat", b.caveat}};
      emit_payload_file(p);
      return finish(kOk, p);
    }
    if (*b_pre) {
      if (!quartic && !quintic) throw InputError("choose --quartic or --quintic");
      const long a = quartic ? 4 : 5;
      const auto q = bounds::quartic_quintic_irr(a, d, contains_line);
      const auto gc = bounds::preset(a, d);
      json p{{"irr", json_integer(q.value)},
             {"valid", q.valid},
             {"threshold", json_integer(q.threshold)},
             {"a", a},
             {"constants", {{"e", gc.e}, {"zeta", gc.zeta}, {"ell", gc.ell}, {"M", gc.M}, {"d", gc.d}}},
             {"d0_picoco", bounds::terms_json(bounds::d0_picoco(gc))}};
      emit_payload_file(p);
      return finish(q.valid ? kOk : kNegative, p);
    }
    return finish(kInputError, json{{"error", "no command"}, {"usage", app.help()}});
  } catch (const CorruptRecord& err) {
    return finish(kInputError, json{{"error", err.what()}, {"line", err.line()}});
  } catch (const std::exception& err) {
    return finish(kInputError, json{{"error", err.what()}});
  }
}

}  // namespace irrkit::cli
