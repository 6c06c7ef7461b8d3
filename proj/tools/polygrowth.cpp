// polygrowth: command-line front end for the growth-shape library.
//
// Every stochastic command resolves an effective configuration (config file,
// then flags), writes a manifest echoing it before any work starts, and
// completes the manifest afterwards. Passing that manifest back through
// --config reproduces the CSV outputs byte for byte.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polygrowth/geometry.hpp"
#include "polygrowth/lattice.hpp"
#include "polygrowth/random_sim.hpp"
#include "polygrowth/report.hpp"
#include "polygrowth/rule_io.hpp"
#include "polygrowth/solvable.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace polygrowth;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("invalid JSON: ") + e.what());
  }
}

void write_text(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << body;
}

// ---- configuration helpers ----

/// A manifest is accepted wherever a config is: its "config" member is used.
json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json doc = read_json_file(path, "config");
  if (doc.is_object() && doc.contains("command") && doc.contains("config")) doc = doc["config"];
  if (!doc.is_object()) throw ConfigError("config", "expected an object");
  return doc;
}

template <class T>
T get_field(const json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  try {
    return cfg[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config." + key, "wrong type");
  }
}

std::int64_t positive(const json& cfg, const std::string& key, std::int64_t fallback) {
  const auto v = get_field<std::int64_t>(cfg, key, fallback);
  if (v <= 0) throw ConfigError("config." + key, "must be positive");
  return v;
}

double probability_field(const json& cfg, const std::string& key, double fallback) {
  const auto v = get_field<double>(cfg, key, fallback);
  if (!(v > 0.0 && v <= 1.0)) throw ConfigError("config." + key, "must lie in (0, 1]");
  return v;
}

Vec2i parse_vec(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ConfigError(field, "expected [x, y] with integer entries");
  const Vec2i v{j[0].get<int>(), j[1].get<int>()};
  if (v.x == 0 && v.y == 0) throw ConfigError(field, "zero vector");
  return v;
}

/// "x,y" from the command line.
json vec_from_flag(const std::string& s) {
  int x = 0, y = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> x >> comma >> y) || comma != ',' || !is.eof()) throw UsageError("expected x,y but got '" + s + "'");
  return json::array({x, y});
}

/// The rule member may be a path or an inline document; the echo is always inline.
json resolve_rule(json& cfg) {
  if (!cfg.contains("rule")) throw ConfigError("config.rule", "missing (use --rule FILE)");
  if (cfg["rule"].is_string()) cfg["rule"] = read_json_file(cfg["rule"].get<std::string>(), "config.rule");
  return cfg["rule"];
}

std::uint64_t resolve_seed(json& cfg) {
  if (cfg.contains("seed") && !cfg["seed"].is_null()) {
    if (!cfg["seed"].is_number_unsigned()) throw ConfigError("config.seed", "expected a non-negative integer");
    return cfg["seed"].get<std::uint64_t>();
  }
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  cfg["seed"] = seed;
  std::cout << "seed: " << seed << " (generated)\n";
  return seed;
}

PerturbationSpec make_spec(const MonotoneRule& rule, const json& cfg) {
  if (!rule.is_deterministic()) {
    if (cfg.contains("p")) throw ConfigError("config.p", "not allowed with a probability table rule");
    return PerturbationSpec::custom(rule);
  }
  return PerturbationSpec::standard(rule, probability_field(cfg, "p", 1.0));
}

void check_rule(const MonotoneRule& rule) {
  const auto issues = validate_rule(rule);
  if (issues.empty()) return;
  std::ostringstream os;
  for (const auto& v : issues) os << "\n  " << v.code << ": " << v.detail;
  throw ConfigError("config.rule", "rule violates the standing assumptions:" + os.str());
}

/// Output directory plus the manifest living in it.
class Run {
 public:
  Run(std::string command, json cfg, const std::string& out_dir) : dir_(out_dir.empty() ? "." : out_dir) {
    fs::create_directories(dir_);
    manifest_.command = std::move(command);
    manifest_.config = std::move(cfg);
    if (manifest_.config.contains("seed")) {
      manifest_.seed = manifest_.config["seed"].get<std::uint64_t>();
      manifest_.has_seed = true;
    }
    manifest_.tool_version = report::kToolVersion;
    manifest_.write(path("manifest.json").string());
    start_ = std::chrono::steady_clock::now();
  }
  fs::path path(const std::string& name) const { return dir_ / name; }
  void emit(const std::string& name, const std::string& body) {
    write_text(path(name), body);
    manifest_.outputs.push_back(path(name).string());
  }
  void finish() {
    manifest_.outputs.push_back(path("manifest.json").string());
    manifest_.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    manifest_.status = "ok";
    manifest_.write(path("manifest.json").string());
    std::cout << "manifest: " << path("manifest.json").string() << '\n';
  }

 private:
  fs::path dir_;
  report::RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

std::string vertex_list(std::span<const RPoint> vs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i];
  return os.str();
}

// ---- deterministic geometry commands ----

int cmd_validate(const std::string& rule_file) {
  const MonotoneRule rule = load_rule(rule_file);
  const auto issues = validate_rule(rule);
  std::cout << rule.describe() << '\n';
  if (issues.empty()) {
    std::cout << "valid\n";
    return 0;
  }
  for (const auto& v : issues) std::cout << v.code << ": " << v.detail << '\n';
  return kExitDomain;
}

int cmd_wulff(const std::string& rule_file, const std::string& svg, bool as_json) {
  const MonotoneRule rule = load_rule(rule_file);
  const StarBoundary star = k_star(rule);
  const Polygon l = wulff_shape(star);
  if (as_json) {
    std::cout << json{{"K", report::star_to_json(star)}, {"L", report::polygon_to_json(l)}}.dump(2) << '\n';
  } else {
    std::cout << "L vertices (" << l.size() << "): " << vertex_list(l) << '\n';
  }
  if (!svg.empty()) write_text(svg, report::render_overlay({report::to_points(l), report::to_points(star.vertices)}));
  return 0;
}

int cmd_classify(const std::string& rule_file, const std::string& svg) {
  const MonotoneRule rule = load_rule(rule_file);
  StarBoundary star;
  try {
    star = k_star(rule.skeleton());
  } catch (const NotSupercritical&) {
    std::cout << "not supercritical\n";
    return kExitDomain;
  }
  const CaseLabel label = classify(star);
  const KPrime kp = k_prime(star);
  std::cout << to_string(label) << '\n';
  std::cout << "K vertices (" << star.size() << "): " << vertex_list(star.vertices) << '\n';
  std::cout << "contact points: " << kp.points.size() << ", contact segments: " << kp.segments.size() << '\n';
  if (!svg.empty()) write_text(svg, report::render_star(star));
  return 0;
}

const std::vector<std::string> kSurveyHeader{"theta", "supercritical", "case", "quasi_additive", "exactly_stable",
                                             "star_vertices", "kprime_points", "kprime_segments"};

int cmd_survey(int rho, int extra, const std::string& csv, const std::string& svg) {
  if (rho < 1 || rho > 16) throw ConfigError("rho", "must lie in [1, 16]");
  if (extra < 0) throw ConfigError("extra", "must be non-negative");
  const Survey s = survey(rho, extra);
  std::ostringstream table;
  report::CsvWriter w(table, kSurveyHeader);
  for (const auto& r : s.rows) {
    w.cell(r.theta).cell(r.supercritical);
    w.cell(r.supercritical ? std::to_string(static_cast<int>(r.label.kind)) : std::string("none"));
    w.cell(r.label.quasi_additive).cell(r.exactly_stable);
    w.cell(r.star_vertices).cell(r.kprime_points).cell(r.kprime_segments);
    w.end_row();
  }
  if (csv.empty() || csv == "-") std::cout << table.str();
  else write_text(csv, table.str());

  std::map<int, std::vector<int>> by_case;
  std::vector<int> sub;
  for (const auto& r : s.rows) (r.supercritical ? by_case[static_cast<int>(r.label.kind)] : sub).push_back(r.theta);
  auto list = [](const std::vector<int>& v) {
    std::string out;
    for (int t : v) out += (out.empty() ? "" : ",") + std::to_string(t);
    return "{" + out + "}";
  };
  std::cerr << "range " << rho << ": case 1 " << list(by_case[1]) << ", case 2 " << list(by_case[2]) << ", case 3 "
            << list(by_case[3]) << ", not supercritical " << list(sub) << '\n';
  std::cerr << "lambda values " << list({s.lambda_values.begin(), s.lambda_values.end()})
            << (s.routes_agree ? ", agree with case 3" : ", DISAGREE with case 3") << '\n';
  if (!svg.empty()) {
    std::vector<std::vector<report::Pt>> shapes;
    for (const auto& k : k_family(rho)) shapes.push_back(report::to_points(k.vertices));
    write_text(svg, report::render_overlay(shapes));
  }
  return 0;
}

// ---- stochastic commands ----

int cmd_grow(json cfg, const std::string& out) {
  const MonotoneRule rule = rule_from_json(resolve_rule(cfg), "config.rule");
  check_rule(rule);
  const PerturbationSpec spec = make_spec(rule, cfg);
  const auto horizon = positive(cfg, "horizon", 100);
  const auto seed_scale = positive(cfg, "seed_scale", 3);
  const auto every = positive(cfg, "snapshot_every", 10);
  const auto threads = static_cast<unsigned>(positive(cfg, "threads", 1));
  const std::uint64_t seed = resolve_seed(cfg);
  Run run("grow", cfg, out);

  const Polygon l = wulff_shape(spec.skeleton());
  const auto seed_cells = shape_seed(l, seed_scale);
  const Trajectory traj = grow_finite(spec, seed_cells, horizon, RngKey{seed, 0}, threads);

  std::ostringstream table;
  report::CsvWriter w(table, {"t", "occupied", "hausdorff_to_scaled_L"});
  for (std::int64_t t = 0; t <= horizon; t += every) {
    const auto cells = traj.cells_at(t);
    w.cell(t).cell(cells.size()).cell(report::fmt(hausdorff_to_polygon(cells, l, double(t + seed_scale))));
    w.end_row();
  }
  run.emit("growth.csv", table.str());
  std::ostringstream rle;
  write_rle(rle, traj.final_state());
  run.emit("final.rle", rle.str());
  run.emit("bands.svg", report::render_bands(traj, every, &l, double(horizon + seed_scale)));
  std::cout << "occupied at t=" << horizon << ": " << traj.final_state().count() << '\n';
  run.finish();
  return 0;
}

std::vector<Vec2i> directions_from(const json& cfg, const std::vector<Vec2i>& fallback) {
  if (!cfg.contains("directions")) return fallback;
  if (!cfg["directions"].is_array() || cfg["directions"].empty())
    throw ConfigError("config.directions", "expected a non-empty list of [x, y]");
  std::vector<Vec2i> out;
  for (std::size_t i = 0; i < cfg["directions"].size(); ++i)
    out.push_back(parse_vec(cfg["directions"][i], "config.directions[" + std::to_string(i) + "]"));
  return out;
}

StripConfig strip_template(const json& cfg) {
  StripConfig s;
  s.width = static_cast<int>(positive(cfg, "width", s.width));
  s.horizon = positive(cfg, "horizon", s.horizon);
  s.blocks = static_cast<int>(positive(cfg, "blocks", s.blocks));
  s.replicas = static_cast<int>(positive(cfg, "replicas", s.replicas));
  if (s.replicas == 1 && s.blocks < 2) throw ConfigError("config.blocks", "at least two blocks are needed");
  s.threads = static_cast<unsigned>(positive(cfg, "threads", 1));
  s.burn_in = get_field<double>(cfg, "burn_in", s.burn_in);
  if (!(s.burn_in >= 0.0 && s.burn_in < 1.0)) throw ConfigError("config.burn_in", "must lie in [0, 1)");
  return s;
}

std::string velocity_table(const std::vector<VelocityEstimate>& rows) {
  std::ostringstream table;
  report::CsvWriter w(table, {"direction_x", "direction_y", "estimate", "stderr", "samples", "seed"});
  for (const auto& r : rows) {
    w.cell(r.direction.x).cell(r.direction.y).cell(r.estimate).cell(r.stderr_).cell(r.samples);
    w.cell(std::to_string(r.seed));
    w.end_row();
  }
  return table.str();
}

/// Compares each estimate with the skeleton speed; exact at p = 1.
void print_velocity_summary(const PerturbationSpec& spec, const std::vector<VelocityEstimate>& rows) {
  for (const auto& r : rows) {
    const Speed sp = speed(spec.skeleton(), r.direction);
    const Vec2i red = r.reduction.apply(r.direction);
    const Rational exact_vertical(sp.scaled, red.y);
    const double w = double(sp.scaled) / std::hypot(r.direction.x, r.direction.y);
    std::cout << "u=(" << r.direction.x << "," << r.direction.y << ") estimate " << report::fmt(r.estimate) << " +- "
              << report::fmt(r.stderr_) << ", deterministic w " << report::fmt(w);
    if (spec.p() == 1.0) std::cout << (r.vertical_speed == exact_vertical ? " (exact match)" : " (MISMATCH)");
    std::cout << '\n';
  }
}

int cmd_strip(json cfg, const std::string& out) {
  const MonotoneRule rule = rule_from_json(resolve_rule(cfg), "config.rule");
  check_rule(rule);
  const PerturbationSpec spec = make_spec(rule, cfg);
  const auto dirs = directions_from(cfg, {{0, 1}});
  const StripConfig tmpl = strip_template(cfg);
  const std::uint64_t seed = resolve_seed(cfg);
  Run run("strip", cfg, out);
  const auto rows = estimate_k_polygon(spec, dirs, tmpl, seed);
  run.emit("velocities.csv", velocity_table(rows));
  print_velocity_summary(spec, rows);
  run.finish();
  return 0;
}

int cmd_kpoly(json cfg, const std::string& out) {
  const MonotoneRule rule = rule_from_json(resolve_rule(cfg), "config.rule");
  check_rule(rule);
  const PerturbationSpec spec = make_spec(rule, cfg);
  const auto dirs = directions_from(cfg, star_directions(spec.neighborhood()));
  const StripConfig tmpl = strip_template(cfg);
  const std::uint64_t seed = resolve_seed(cfg);
  Run run("kpoly", cfg, out);
  const auto rows = estimate_k_polygon(spec, dirs, tmpl, seed);
  const StarBoundary exact = k_star(spec.skeleton());
  run.emit("velocities.csv", velocity_table(rows));
  run.emit("kpoly.svg", report::render_kpoly(&exact, rows));
  print_velocity_summary(spec, rows);
  run.finish();
  return 0;
}

int cmd_solvable(json cfg, const std::string& out) {
  const bool figure5 = get_field<bool>(cfg, "figure5", false);
  const auto horizon = get_field<std::int64_t>(cfg, "horizon", 0);
  if (horizon < 0) throw ConfigError("config.horizon", "must be non-negative");
  const int samples = static_cast<int>(positive(cfg, "samples", 200));
  if (!figure5 && horizon == 0) throw UsageError("solvable: pass --figure5 and/or --horizon T");
  std::uint64_t seed = 0;
  double p = 0.5;
  int seeds = 1;
  if (horizon > 0) {
    p = probability_field(cfg, "p", 0.5);
    seeds = static_cast<int>(positive(cfg, "seeds", 1));
    seed = resolve_seed(cfg);
  }
  Run run("solvable", cfg, out);

  if (figure5) {
    std::ostringstream table;
    report::CsvWriter w(table, {"p", "y", "x_left", "x_right"});
    std::vector<std::vector<report::Pt>> shapes;
    for (int k = 0; k <= 10; ++k) {
      const double pk = k / 10.0;
      const auto curve = solvable::shape_Lp(pk);
      for (const auto& row : curve.sample(samples)) {
        w.cell(report::fmt(pk)).cell(row[0]).cell(row[1]).cell(row[2]);
        w.end_row();
      }
      shapes.push_back(curve.outline(samples));
    }
    run.emit("lp_curves.csv", table.str());
    run.emit("figure5.svg", report::render_overlay(shapes));
  }
  if (horizon > 0) {
    std::vector<double> mean(static_cast<std::size_t>(horizon + 1), 0.0);
    for (int s = 0; s < seeds; ++s) {
      const auto st = solvable::simulate_interface(p, horizon, RngKey{seed, static_cast<std::uint64_t>(s)});
      for (std::size_t n = 0; n < mean.size(); ++n) mean[n] += double(st.h[n]) / seeds;
    }
    std::ostringstream table;
    report::CsvWriter w(table, {"n", "alpha", "mean_h_over_T", "limit"});
    for (std::size_t n = 0; n < mean.size(); ++n) {
      const double alpha = double(n) / double(horizon);
      w.cell(n).cell(alpha).cell(mean[n] / double(horizon)).cell(solvable::interface_limit(p, alpha));
      w.end_row();
    }
    run.emit("interface.csv", table.str());
  }
  run.finish();
  return 0;
}

int cmd_render(const std::string& rle, const std::string& rule_file, const std::string& what, const std::string& svg) {
  std::string doc;
  if (!rle.empty()) {
    std::ifstream in(rle);
    if (!in) throw ConfigError("rle", "cannot open " + rle);
    doc = report::render_state(read_rle(in));
  } else if (!rule_file.empty()) {
    const MonotoneRule rule = load_rule(rule_file);
    const StarBoundary star = k_star(rule.skeleton());
    if (what == "star") doc = report::render_star(star);
    else if (what == "wulff") doc = report::render_overlay({report::to_points(wulff_shape(star))});
    else throw ConfigError("what", "expected star or wulff");
  } else {
    throw UsageError("render: pass --rle FILE or --rule FILE");
  }
  if (svg.empty() || svg == "-") std::cout << doc;
  else write_text(svg, doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone cellular-automaton growth shapes: exact geometry, perturbation simulation, solvable model."};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolVersion);

  std::string rule_file, svg, csv, out = ".", config_file, rle, what = "star";
  bool as_json = false;

  auto* validate = app.add_subcommand("validate", "Check a rule file against the standing assumptions");
  validate->add_option("--rule", rule_file, "Rule JSON file")->required();

  auto* wulff = app.add_subcommand("wulff", "Print the exact limit shape L (polar of the hull of K)");
  wulff->add_option("--rule", rule_file, "Rule JSON file")->required();
  wulff->add_option("--svg", svg, "Write an SVG of L over K");
  wulff->add_flag("--json", as_json, "Exact vertices as numerator/denominator pairs");

  auto* cls = app.add_subcommand("classify", "Classify a rule into one of the three cases");
  cls->add_option("--rule", rule_file, "Rule JSON file")->required();
  cls->add_option("--svg", svg, "Write an SVG of K, its hull and the contact set");

  int rho = 1, extra = 0;
  auto* surv = app.add_subcommand("survey", "Threshold survey on the range-rho box");
  surv->add_option("--rho", rho, "Box range (1..16)")->required();
  surv->add_option("--extra", extra, "Thresholds beyond rho(2rho+1) to include");
  surv->add_option("--csv", csv, "CSV output path (default stdout)");
  surv->add_option("--svg", svg, "Overlay of the K family");

  // Stochastic commands share the config mechanism: flags override the file.
  json flags = json::object();
  auto stochastic = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "Config or manifest JSON");
    sub->add_option("--out", out, "Output directory")->capture_default_str();
    sub->add_option_function<std::string>("--rule", [&](const std::string& v) { flags["rule"] = v; }, "Rule JSON file");
    sub->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { flags["seed"] = v; },
                                            "Master seed (generated and printed when absent)");
    sub->add_option_function<unsigned>("--threads", [&](unsigned v) { flags["threads"] = v; },
                                       "Worker threads (results do not depend on it)");
    sub->add_option_function<double>("--p", [&](double v) { flags["p"] = v; }, "Perturbation probability");
    sub->add_option_function<std::int64_t>("--horizon", [&](std::int64_t v) { flags["horizon"] = v; }, "Steps");
  };
  auto strip_flags = [&](CLI::App* sub) {
    sub->add_option_function<std::vector<std::string>>(
        "--direction",
        [&](const std::vector<std::string>& v) {
          flags["directions"] = json::array();
          for (const auto& s : v) flags["directions"].push_back(vec_from_flag(s));
        },
        "Normal direction x,y (repeatable)");
    sub->add_option_function<int>("--width", [&](int v) { flags["width"] = v; }, "Strip width M");
    sub->add_option_function<double>("--burn-in", [&](double v) { flags["burn_in"] = v; }, "Discarded fraction");
    sub->add_option_function<int>("--blocks", [&](int v) { flags["blocks"] = v; }, "Batches for the error bar");
    sub->add_option_function<int>("--replicas", [&](int v) { flags["replicas"] = v; },
                                  "Independent runs per direction; above 1 the error bar is their spread");
  };

  auto* grow = app.add_subcommand("grow", "Grow from a scaled copy of L and record banded snapshots");
  stochastic(grow);
  grow->add_option_function<std::int64_t>("--snapshot-every", [&](std::int64_t v) { flags["snapshot_every"] = v; },
                                          "Band width / CSV sampling interval");
  grow->add_option_function<std::int64_t>("--seed-scale", [&](std::int64_t v) { flags["seed_scale"] = v; },
                                          "Initial set is seed_scale * L");

  auto* strip = app.add_subcommand("strip", "Tilted-strip velocity estimates");
  stochastic(strip);
  strip_flags(strip);

  auto* kpoly = app.add_subcommand("kpoly", "Reconstruct K_{1/w_p} from strip velocities");
  stochastic(kpoly);
  strip_flags(kpoly);

  auto* solv = app.add_subcommand("solvable", "Exactly solvable model: L_p curves and interface runs");
  stochastic(solv);
  solv->add_flag_callback("--figure5", [&] { flags["figure5"] = true; }, "Emit the L_p overlay for p = 0, 0.1, ..., 1");
  solv->add_option_function<int>("--seeds", [&](int v) { flags["seeds"] = v; }, "Independent interface runs");
  solv->add_option_function<int>("--samples", [&](int v) { flags["samples"] = v; }, "Curve samples per shape");

  auto* render = app.add_subcommand("render", "Render a lattice state or a rule's K/L as SVG");
  render->add_option("--rle", rle, "Lattice state (RLE)");
  render->add_option("--rule", rule_file, "Rule JSON file");
  render->add_option("--what", what, "star | wulff")->capture_default_str();
  render->add_option("--svg", svg, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto effective = [&] {
    json cfg = load_config(config_file);
    for (auto& [k, v] : flags.items()) cfg[k] = v;
    return cfg;
  };

  try {
    if (*validate) return cmd_validate(rule_file);
    if (*wulff) return cmd_wulff(rule_file, svg, as_json);
    if (*cls) return cmd_classify(rule_file, svg);
    if (*surv) return cmd_survey(rho, extra, csv, svg);
    if (*grow) return cmd_grow(effective(), out);
    if (*strip) return cmd_strip(effective(), out);
    if (*kpoly) return cmd_kpoly(effective(), out);
    if (*solv) return cmd_solvable(effective(), out);
    if (*render) return cmd_render(rle, rule_file, what, svg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotSupercritical& e) {
    std::cerr << "not supercritical: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
