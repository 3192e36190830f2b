// Command-line laboratory: experiment configs in, JSON/CSV reports out.
//
// Every run is fully determined by (config, seed); reports embed the config
// hash and tool version, and the only varying fields live in the header
// block. Exit codes: 0 success, 1 library invariant violation, 2 bad config.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "torodyn/action.hpp"
#include "torodyn/averaging.hpp"
#include "torodyn/bounds.hpp"
#include "torodyn/cartan.hpp"
#include "torodyn/errors.hpp"
#include "torodyn/json_io.hpp"
#include "torodyn/orbits.hpp"
#include "torodyn/pipeline.hpp"
#include "torodyn/spectral.hpp"
#include "torodyn/symbolic.hpp"

namespace {

using Json = nlohmann::json;
using namespace torodyn;

constexpr const char* kVersion = "0.1.0";

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> tolerance;
};

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

// Silent typos are the main reproducibility hazard, so unknown keys are hard
// errors, listed by name.
void reject_unknown(const Json& cfg, const std::vector<std::string>& allowed,
                    const std::string& where) {
  if (!cfg.is_object()) throw ConfigError(where + ": config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    (void)value;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown config field '" + key + "'");
  }
}

template <typename T>
T get_or(const Json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("config field '" + key + "' has the wrong type");
  }
}

Rational rational_field(const Json& cfg, const std::string& key) {
  const Json& v = cfg.at(key);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ConfigError("config field '" + key + "' must be an integer or a \"p/q\" string");
}

ToralMap map_field(const Json& cfg, const std::string& where) {
  const bool has_times = cfg.contains("times");
  const bool has_matrix = cfg.contains("matrix");
  if (has_times == has_matrix)
    throw ConfigError(where + ": exactly one of 'times' or 'matrix' is required");
  if (has_times) {
    if (!cfg.at("times").is_number_integer())
      throw ConfigError(where + ": 'times' must be an integer");
    return ToralMap::times(cfg.at("times").get<long long>());
  }
  std::vector<std::vector<long long>> rows;
  try {
    rows = cfg.at("matrix").get<std::vector<std::vector<long long>>>();
  } catch (const Json::exception&) {
    throw ConfigError(where + ": 'matrix' must be an array of integer rows");
  }
  if (rows.empty()) throw ConfigError(where + ": empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ConfigError(where + ": matrix must be square");
  return ToralMap::from_matrix(IMat::from_rows(rows));
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

char hex_digit(std::uint64_t v) { return "0123456789abcdef"[v & 15]; }

std::string hash_hex(std::uint64_t h) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<size_t>(i)] = hex_digit(h);
  return s;
}

// effective: the config after defaults, the thing the hash must pin down.
void write_report(const CommonFlags& flags, const std::string& subcommand,
                  const Json& effective, const Json& result,
                  std::chrono::steady_clock::time_point started) {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  Json report;
  report["header"] = Json{{"tool", "torodyn"},
                          {"version", kVersion},
                          {"subcommand", subcommand},
                          {"config_hash", hash_hex(fnv1a64(effective.dump()))},
                          {"timestamp", iso_timestamp()},
                          {"elapsed_ms", elapsed}};
  report["config"] = effective;
  report["result"] = result;

  std::filesystem::create_directories(flags.out_dir);
  const auto path = std::filesystem::path(flags.out_dir) / (subcommand + ".json");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report: " + path.string());
  out << report.dump(2) << '\n';
  std::cout << path.string() << '\n';
}

void write_csv(const CommonFlags& flags, const std::string& name,
               const std::vector<std::string>& lines) {
  std::filesystem::create_directories(flags.out_dir);
  const auto path = std::filesystem::path(flags.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write CSV: " + path.string());
  for (const auto& line : lines) out << line << '\n';
  std::cout << path.string() << '\n';
}

// ---- subcommands ----

void cmd_flagship(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg,
                 {"ball_exponent", "center", "radius", "window", "samples", "digit_length",
                  "iterate_steps", "density_depth", "epsilon", "seed", "threads", "tolerance"},
                 "flagship");
  pipeline::FlagshipConfig fc;
  fc.ball_exponent = get_or(cfg, "ball_exponent", fc.ball_exponent);
  if (cfg.contains("center")) fc.center = rational_field(cfg, "center");
  if (cfg.contains("radius")) fc.radius = rational_field(cfg, "radius");
  fc.window = get_or(cfg, "window", fc.window);
  fc.samples = get_or(cfg, "samples", fc.samples);
  fc.digit_length = get_or(cfg, "digit_length", fc.digit_length);
  fc.iterate_steps = get_or(cfg, "iterate_steps", fc.iterate_steps);
  fc.density_depth = get_or(cfg, "density_depth", fc.density_depth);
  fc.epsilon = get_or(cfg, "epsilon", fc.epsilon);
  fc.seed = flags.seed.value_or(get_or(cfg, "seed", fc.seed));
  fc.threads = flags.threads.value_or(get_or(cfg, "threads", fc.threads));
  fc.tolerance = flags.tolerance.value_or(get_or(cfg, "tolerance", fc.tolerance));

  Json effective{{"ball_exponent", fc.ball_exponent},
                 {"window", fc.window},
                 {"samples", fc.samples},
                 {"digit_length", fc.digit_length},
                 {"iterate_steps", fc.iterate_steps},
                 {"density_depth", fc.density_depth},
                 {"epsilon", fc.epsilon},
                 {"seed", fc.seed},
                 {"threads", fc.threads},
                 {"tolerance", fc.tolerance}};
  if (fc.center) effective["center"] = rational_str(*fc.center);
  if (fc.radius) effective["radius"] = rational_str(*fc.radius);

  const auto rep = pipeline::run_flagship(fc);

  Json samples = Json::array();
  for (const auto& s : rep.per_sample) {
    Json js{{"avoid_pass", s.avoid_pass},
            {"density_pass", s.density_pass},
            {"discrepancy", s.discrepancy},
            {"recorded_density", s.recorded_density},
            {"recorded_avoid", s.recorded_avoid}};
    js["first_cover_step"] = s.first_cover_step ? Json(*s.first_cover_step) : Json(nullptr);
    samples.push_back(std::move(js));
  }
  Json result{{"inner_sft", jsonio::sft_spec(rep.inner)},
              {"outer_sft", jsonio::sft_spec(rep.outer)},
              {"dimension_inner", jsonio::val_err(rep.dimension_inner)},
              {"dimension_outer", jsonio::val_err(rep.dimension_outer)},
              {"parry_entropy", rep.parry_entropy},
              {"avoid_passes", rep.avoid_passes},
              {"density_passes", rep.density_passes},
              {"mean_discrepancy", rep.mean_discrepancy},
              {"bound_chain", jsonio::bound_report(rep.chain)},
              {"per_sample", std::move(samples)}};
  if (fc.samples > 0) {
    result["avoid_pass_rate"] = static_cast<double>(rep.avoid_passes) / fc.samples;
    result["density_pass_rate"] = static_cast<double>(rep.density_passes) / fc.samples;
  } else {
    result["avoid_pass_rate"] = nullptr;
    result["density_pass_rate"] = nullptr;
  }
  // Finite-sample passes are evidence about the density prediction, never a
  // proof; the report says so explicitly.
  result["note"] =
      "density passes are finite-resolution evidence at the stated epsilon, not a proof of "
      "orbit density";
  write_report(flags, "flagship", effective, result, started);
}

void cmd_analyze_map(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"times", "matrix", "radius_budget"}, "analyze-map");
  const ToralMap map = map_field(cfg, "analyze-map");
  const double budget = get_or(cfg, "radius_budget", 1e-13);
  Json effective{{"map", jsonio::toral_map(map)}, {"radius_budget", budget}};

  const auto data = spectral::spectral_data(map, budget);
  const auto rep = spectral::entropy_report(map, data);
  Json result{{"spectral", jsonio::spectral_report(data)},
              {"entropy", jsonio::entropy_report(rep)}};
  write_report(flags, "analyze-map", effective, result, started);
}

void cmd_make_pairs(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"times", "matrix", "coeff_bound"}, "make-pairs");
  const ToralMap seed_map = map_field(cfg, "make-pairs");
  const long long bound = get_or(cfg, "coeff_bound", 2ll);
  Json effective{{"map", jsonio::toral_map(seed_map)}, {"coeff_bound", bound}};

  const auto partners = action::find_commuting_partners(seed_map, bound);
  Json list = Json::array();
  for (const auto& p : partners) list.push_back(jsonio::toral_map(p));
  Json result{{"partners", std::move(list)}, {"count", partners.size()}};
  write_report(flags, "make-pairs", effective, result, started);
}

void cmd_rank_one_scan(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"t", "s", "bound", "twist_cap"}, "rank-one-scan");
  if (!cfg.contains("t") || !cfg.contains("s"))
    throw ConfigError("rank-one-scan: 't' and 's' map blocks are required");
  reject_unknown(cfg.at("t"), {"times", "matrix"}, "rank-one-scan.t");
  reject_unknown(cfg.at("s"), {"times", "matrix"}, "rank-one-scan.s");
  const ToralMap t = map_field(cfg.at("t"), "rank-one-scan.t");
  const ToralMap s = map_field(cfg.at("s"), "rank-one-scan.s");
  const long long bound = get_or(cfg, "bound", 20ll);
  const int twist_cap = get_or(cfg, "twist_cap", 12);
  Json effective{{"t", jsonio::toral_map(t)},
                 {"s", jsonio::toral_map(s)},
                 {"bound", bound},
                 {"twist_cap", twist_cap}};

  const auto pair = action::CommutingPair::make(t, s);
  const auto dep = action::multiplicative_dependence(pair, bound);
  const auto scan = action::rank_one_factor_scan(pair, bound, twist_cap);
  Json result{{"dependence", jsonio::dependence_report(dep)},
              {"factor_scan", jsonio::factor_scan_report(scan)}};
  write_report(flags, "rank-one-scan", effective, result, started);
}

void cmd_avoid_sft(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"base", "center", "radius", "window", "tolerance"}, "avoid-sft");
  const int base = get_or(cfg, "base", 2);
  if (!cfg.contains("center") || !cfg.contains("radius"))
    throw ConfigError("avoid-sft: 'center' and 'radius' are required");
  const auto ball = symbolic::BallSpec::make(rational_field(cfg, "center"),
                                             rational_field(cfg, "radius"));
  const int window = get_or(cfg, "window", 2);
  const double tol = flags.tolerance.value_or(get_or(cfg, "tolerance", 1e-12));
  Json effective{{"base", base},
                 {"center", rational_str(ball.center)},
                 {"radius", rational_str(ball.radius)},
                 {"window", window},
                 {"tolerance", tol}};

  const auto [inner, outer] = symbolic::avoid_ball_sft(base, ball, window);
  const auto pd_inner = symbolic::perron(inner, tol);
  const auto pd_outer = symbolic::perron(outer, tol);
  Json result{{"inner_sft", jsonio::sft_spec(inner)},
              {"inner_perron", jsonio::perron_report(pd_inner)},
              {"outer_sft", jsonio::sft_spec(outer)},
              {"outer_perron", jsonio::perron_report(pd_outer)}};
  write_report(flags, "avoid-sft", effective, result, started);
}

void cmd_sample(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"base", "center", "radius", "window", "length", "seed", "tolerance"},
                 "sample");
  const int base = get_or(cfg, "base", 2);
  if (!cfg.contains("center") || !cfg.contains("radius"))
    throw ConfigError("sample: 'center' and 'radius' are required");
  const auto ball = symbolic::BallSpec::make(rational_field(cfg, "center"),
                                             rational_field(cfg, "radius"));
  const int window = get_or(cfg, "window", 2);
  const long long length = get_or(cfg, "length", 64ll);
  const std::uint64_t seed = flags.seed.value_or(get_or(cfg, "seed", std::uint64_t{1}));
  const double tol = flags.tolerance.value_or(get_or(cfg, "tolerance", 1e-12));
  Json effective{{"base", base},           {"center", rational_str(ball.center)},
                 {"radius", rational_str(ball.radius)}, {"window", window},
                 {"length", length},       {"seed", seed},
                 {"tolerance", tol}};

  const auto [inner, outer] = symbolic::avoid_ball_sft(base, ball, window);
  const auto pd = symbolic::perron(inner, tol);
  const auto digits = symbolic::parry_sample(inner, pd, length, seed);
  Json result{{"inner_sft", jsonio::sft_spec(inner)},
              {"perron", jsonio::perron_report(pd)},
              {"digits", digits},
              {"admissible", inner.admissible(digits)}};
  write_report(flags, "sample", effective, result, started);
}

void cmd_density(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"map", "start_digits", "start_base", "steps", "depth", "epsilon",
                       "two_sided"},
                 "density");
  if (!cfg.contains("map")) throw ConfigError("density: 'map' block is required");
  reject_unknown(cfg.at("map"), {"times", "matrix"}, "density.map");
  const ToralMap map = map_field(cfg.at("map"), "density.map");
  if (!cfg.contains("start_digits"))
    throw ConfigError("density: 'start_digits' (per-coordinate digit arrays) is required");
  const int start_base = get_or(cfg, "start_base", 2);
  std::vector<std::vector<int>> digit_rows;
  try {
    digit_rows = cfg.at("start_digits").get<std::vector<std::vector<int>>>();
  } catch (const Json::exception&) {
    throw ConfigError("density: 'start_digits' must be an array of digit arrays");
  }
  if (static_cast<int>(digit_rows.size()) != map.dim)
    throw ConfigError("density: one digit array per coordinate is required");
  const long long steps = get_or(cfg, "steps", 4096ll);
  const int depth = get_or(cfg, "depth", 6);
  const double epsilon = get_or(cfg, "epsilon", 0.02);
  const bool two_sided = get_or(cfg, "two_sided", false);

  // Per-coordinate digit strings share one precision.
  const size_t prec = digit_rows[0].size();
  for (const auto& r : digit_rows)
    if (r.size() != prec) throw ConfigError("density: digit arrays must share one length");
  std::vector<Rational> coords;
  for (const auto& r : digit_rows) {
    Rational x = 0;
    Rational scale = Rational(1, start_base);
    for (int d : r) {
      x += Rational(d) * scale;
      scale /= start_base;
    }
    coords.push_back(x);
  }
  const auto start = orbits::TorusPoint::from_rationals(coords, start_base,
                                                        static_cast<long long>(prec));

  Json effective{{"map", jsonio::toral_map(map)}, {"start_base", start_base},
                 {"start_digits", digit_rows},    {"steps", steps},
                 {"depth", depth},                {"epsilon", epsilon},
                 {"two_sided", two_sided}};

  const auto trace = two_sided ? orbits::iterate_two_sided(map, start, steps, depth)
                               : orbits::iterate(map, start, steps, depth);
  const auto verdict = orbits::epsilon_dense(trace, epsilon);
  Json result{{"density", jsonio::density_report(verdict)},
              {"recorded", trace.recorded}};
  result["precision_exhausted_at"] =
      trace.precision_exhausted_at ? Json(*trace.precision_exhausted_at) : Json(nullptr);
  write_report(flags, "density", effective, result, started);
}

void cmd_average(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"base", "center", "radius", "window", "depth", "map_times", "terms",
                       "tolerance", "export_measure"},
                 "average");
  const int base = get_or(cfg, "base", 2);
  if (!cfg.contains("center") || !cfg.contains("radius"))
    throw ConfigError("average: 'center' and 'radius' are required");
  const auto ball = symbolic::BallSpec::make(rational_field(cfg, "center"),
                                             rational_field(cfg, "radius"));
  const int window = get_or(cfg, "window", 2);
  const int depth = get_or(cfg, "depth", 8);
  const long long k = get_or(cfg, "map_times", 3ll);
  const double tol = flags.tolerance.value_or(get_or(cfg, "tolerance", 1e-12));
  std::vector<std::uint64_t> terms =
      get_or(cfg, "terms", std::vector<std::uint64_t>{64, 256, 1024, 4096});
  const bool export_measure = get_or(cfg, "export_measure", false);

  Json effective{{"base", base},
                 {"center", rational_str(ball.center)},
                 {"radius", rational_str(ball.radius)},
                 {"window", window},
                 {"depth", depth},
                 {"map_times", k},
                 {"terms", terms},
                 {"tolerance", tol},
                 {"export_measure", export_measure}};

  const auto [inner, outer] = symbolic::avoid_ball_sft(base, ball, window);
  const auto pd = symbolic::perron(inner, tol);
  const auto initial = averaging::parry_grid_measure(inner, pd, depth);

  Json curve = Json::array();
  std::vector<std::string> csv{"n_terms,total_variation,max_cell_deviation"};
  averaging::GridMeasure last = initial;
  for (std::uint64_t n : terms) {
    last = averaging::cesaro_average(initial, k, n);
    const auto d = averaging::distance_to_uniform(last);
    curve.push_back(Json{{"n_terms", n},
                         {"total_variation", d.total_variation},
                         {"max_cell_deviation", d.max_cell_deviation}});
    char line[96];
    std::snprintf(line, sizeof line, "%llu,%.17g,%.17g", (unsigned long long)n,
                  d.total_variation, d.max_cell_deviation);
    csv.push_back(line);
  }
  const auto d0 = averaging::distance_to_uniform(initial);
  Json result{{"initial_distance", jsonio::uniform_distance_report(d0)},
              {"tv_curve", std::move(curve)}};
  write_report(flags, "average", effective, result, started);
  write_csv(flags, "tv_curve.csv", csv);
  if (export_measure) {
    std::vector<std::string> mcsv{"cell,weight"};
    for (size_t c = 0; c < last.weights.size(); ++c) {
      char line[64];
      std::snprintf(line, sizeof line, "%zu,%.17g", c, last.weights[c]);
      mcsv.push_back(line);
    }
    write_csv(flags, "averaged_measure.csv", mcsv);
  }
}

void cmd_bound_chain(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"times", "matrix", "dim_avoid", "radius_budget"}, "bound-chain");
  const ToralMap map = map_field(cfg, "bound-chain");
  if (!cfg.contains("dim_avoid")) throw ConfigError("bound-chain: 'dim_avoid' is required");
  const double dim_avoid = cfg.at("dim_avoid").get<double>();
  const double budget = get_or(cfg, "radius_budget", 1e-13);
  Json effective{{"map", jsonio::toral_map(map)},
                 {"dim_avoid", dim_avoid},
                 {"radius_budget", budget}};

  const auto data = spectral::spectral_data(map, budget);
  const auto ent = spectral::entropy_report(map, data);
  const auto rep = bounds::predicted_dim_bound(data, ent, bounds::QGeometry{map.dim, dim_avoid});
  Json result{{"entropy", jsonio::entropy_report(ent)},
              {"chain", jsonio::bound_report(rep)}};
  write_report(flags, "bound-chain", effective, result, started);
}

void cmd_cartan(const CommonFlags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json cfg = load_config(flags.config_path);
  reject_unknown(cfg, {"factors", "multiplicity", "t", "a2", "assumed_entropy", "run_bound"},
                 "cartan");
  if (!cfg.contains("factors") || !cfg.contains("t"))
    throw ConfigError("cartan: 'factors' and 't' are required");
  std::vector<int> ns;
  try {
    ns = cfg.at("factors").get<std::vector<int>>();
  } catch (const Json::exception&) {
    throw ConfigError("cartan: 'factors' must be an array of sl_n sizes");
  }
  const int mult = get_or(cfg, "multiplicity", 1);
  const auto spec = cartan::RootSystemSpec::sl(ns, mult);
  std::vector<std::vector<double>> tv;
  try {
    tv = cfg.at("t").get<std::vector<std::vector<double>>>();
  } catch (const Json::exception&) {
    throw ConfigError("cartan: 't' must be an array of per-factor vectors");
  }
  const auto t = cartan::CartanElement::make(spec, tv);
  const bool run_bound = get_or(cfg, "run_bound", false);

  Json effective{{"factors", ns}, {"multiplicity", mult}, {"t", tv}, {"run_bound", run_bound}};
  Json result{{"entropy", jsonio::cartan_entropy_report(cartan::cartan_entropy(spec, t))}};

  if (cfg.contains("a2")) {
    std::vector<std::vector<double>> a2v;
    try {
      a2v = cfg.at("a2").get<std::vector<std::vector<double>>>();
    } catch (const Json::exception&) {
      throw ConfigError("cartan: 'a2' must be an array of per-factor vectors");
    }
    effective["a2"] = a2v;
    const auto a2 = cartan::CartanElement::make(spec, a2v);
    result["hypotheses"] = jsonio::hypothesis_report(cartan::check_theorem14_hypotheses(spec, t, a2));
  }
  if (run_bound) {
    std::optional<double> assumed;
    if (cfg.contains("assumed_entropy")) {
      assumed = cfg.at("assumed_entropy").get<double>();
      effective["assumed_entropy"] = *assumed;
    }
    result["dim_bound"] = jsonio::cartan_bound_report(cartan::cartan_dim_bound(spec, t, assumed));
  }
  write_report(flags, "cartan", effective, result, started);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toral dynamics laboratory: certified spectra, avoid-ball subshifts, orbit "
               "statistics, and dimension bound chains"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --config etc. after the subcommand name

  CommonFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", flags.out_dir, "output directory (default .)");
  std::uint64_t seed_val = 0;
  auto* seed_opt = app.add_option("--seed", seed_val, "override the config seed");
  int threads_val = 0;
  auto* threads_opt = app.add_option("--threads", threads_val, "worker threads for sampling");
  double tol_val = 0;
  auto* tol_opt = app.add_option("--tolerance", tol_val, "numeric tolerance override");

  struct Sub {
    const char* name;
    const char* help;
    void (*run)(const CommonFlags&);
  };
  const Sub subs[] = {
      {"flagship", "the x2-avoid / x3-density sampling experiment", cmd_flagship},
      {"analyze-map", "certified spectrum and entropy of one map", cmd_analyze_map},
      {"make-pairs", "commuting partners of an irreducible seed map", cmd_make_pairs},
      {"rank-one-scan", "multiplicative dependence and joint factor scan", cmd_rank_one_scan},
      {"avoid-sft", "inner/outer avoid-ball subshifts with certified dimensions", cmd_avoid_sft},
      {"sample", "one maximal-entropy sample word from the avoid subshift", cmd_sample},
      {"density", "finite-resolution orbit density verdict", cmd_density},
      {"average", "push a maximal-entropy grid measure and track distance to uniform",
       cmd_average},
      {"bound-chain", "entropy retention, unstable allocation, and the slicing sum",
       cmd_bound_chain},
      {"cartan", "root-system entropy and rank hypothesis checks", cmd_cartan},
  };
  for (const Sub& s : subs) app.add_subcommand(s.name, s.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  if (*seed_opt) flags.seed = seed_val;
  if (*threads_opt) flags.threads = threads_val;
  if (*tol_opt) flags.tolerance = tol_val;

  try {
    for (const Sub& s : subs)
      if (app.get_subcommand(s.name)->parsed()) s.run(flags);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
