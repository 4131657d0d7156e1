#include "cli.hpp"

#include <fmt/core.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rwcre/alpha.hpp"
#include "rwcre/cooling.hpp"
#include "rwcre/engine.hpp"
#include "rwcre/error.hpp"
#include "rwcre/json_io.hpp"
#include "rwcre/limit_laws.hpp"
#include "rwcre/stat_tests.hpp"

#ifndef RWCRE_VERSION
#define RWCRE_VERSION "unknown"
#endif

namespace rwcre::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kManifestVersion = 1;

const std::vector<std::string> kExperimentKinds = {"lln-nocooling",      "clt-nocooling",   "wlln-cooling",
                                                   "gaussian-recurrent", "crossover-scan",  "oracle-check",
                                                   "kesten-tables",      "lyapunov-curve"};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

// --- config access -----------------------------------------------------------

const json& require(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
  return cfg.at(key);
}

std::int64_t get_int(const json& cfg, const char* key, std::optional<std::int64_t> fallback = std::nullopt) {
  if (!cfg.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(std::string("config is missing '") + key + "'");
  }
  const auto& v = cfg.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  // Accept 1e5-style literals when they are whole numbers.
  if (v.is_number_float() && std::nearbyint(v.get<double>()) == v.get<double>() && std::abs(v.get<double>()) < 9e18)
    return static_cast<std::int64_t>(v.get<double>());
  throw ConfigError(std::string("'") + key + "' must be an integer");
}

double get_double(const json& cfg, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!cfg.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(std::string("config is missing '") + key + "'");
  }
  if (!cfg.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return cfg.at(key).get<double>();
}

bool get_bool(const json& cfg, const char* key, bool fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_boolean()) throw ConfigError(std::string("'") + key + "' must be a boolean");
  return cfg.at(key).get<bool>();
}

std::vector<std::int64_t> get_grid(const json& cfg) {
  if (!cfg.contains("n_grid")) return {get_int(cfg, "n")};
  const auto& g = cfg.at("n_grid");
  if (!g.is_array() || g.empty()) throw ConfigError("'n_grid' must be a nonempty array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    json wrapper = {{"n_grid", g[i]}};
    out.push_back(get_int(wrapper, "n_grid"));
  }
  for (auto n : out)
    if (n < 0) throw ConfigError("horizons must be nonnegative");
  return out;
}

std::vector<double> get_doubles(const json& cfg, const char* key, std::vector<double> fallback) {
  if (!cfg.contains(key)) return fallback;
  const auto& a = cfg.at(key);
  if (!a.is_array() || a.empty()) throw ConfigError(std::string("'") + key + "' must be a nonempty array");
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// --- run context -------------------------------------------------------------

struct Run {
  std::string command;
  std::string kind;
  json config;
  fs::path out_dir;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<std::string> outputs;
  std::ostream* out = nullptr;

  AlphaSpec alpha() const { return alpha_from_json(require(config, "alpha")); }
  CoolingRule rule() const { return rule_from_json(require(config, "rule")); }
  std::int64_t samples() const {
    const auto m = get_int(config, "M");
    if (m < 1) throw ConfigError("M must be at least 1");
    return m;
  }

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(out_dir);
    std::ofstream file(out_dir / name, std::ios::binary);
    file << content;
    if (!file) throw std::runtime_error("cannot write " + (out_dir / name).string());
    if (std::find(outputs.begin(), outputs.end(), name) == outputs.end()) outputs.push_back(name);
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void write_manifest() {
    json manifest = {{"manifest_version", kManifestVersion},
                     {"command", command},
                     {"kind", kind},
                     {"config", config},
                     {"version", RWCRE_VERSION},
                     {"outputs", outputs}};
    write_json("manifest.json", manifest);
  }
};

void write_ensemble(Run& run, const std::string& stem, const EnsembleResult& e, const AlphaSpec& alpha,
                    const CoolingRule& rule) {
  std::string csv = "sample_id,X_n\n";
  for (std::int64_t i = 0; i < e.M; ++i) csv += fmt::format("{},{}\n", i, e.positions[static_cast<std::size_t>(i)]);
  run.write(stem + ".csv", csv);
  run.write_json(stem + ".json", {{"alpha", to_json(alpha)},
                                  {"rule", to_json(rule)},
                                  {"n", e.n},
                                  {"M", e.M},
                                  {"master_seed", e.master_seed},
                                  {"version", RWCRE_VERSION}});
  if (e.has_blocks()) {
    // Column k(n)+1 is the remainder block.
    std::string blocks = "sample_id,k,Y_k\n";
    for (std::int64_t i = 0; i < e.M; ++i)
      for (std::int64_t k = 0; k < e.block_columns; ++k) blocks += fmt::format("{},{},{}\n", i, k + 1, e.block(i, k));
    run.write(stem + "_blocks.csv", blocks);
  }
}

std::string pmf_csv(const AnnealedPmf& pmf) {
  std::string csv = "position,mass\n";
  for (auto [x, p] : pmf.mass) csv += fmt::format("{},{}\n", x, num(p));
  return csv;
}

std::vector<double> scaled(const EnsembleResult& e, double shift, double scale) {
  std::vector<double> out;
  out.reserve(e.positions.size());
  for (auto x : e.positions) out.push_back((static_cast<double>(x) - shift) / scale);
  return out;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

double quantile_of(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Location by the median and scale by the interquartile range; the raw
// spread of heavy-tailed samples is useless for comparing shapes.
std::vector<double> robust_standardize(std::vector<double> v) {
  const double med = median_of(v);
  double iqr = quantile_of(v, 0.75) - quantile_of(v, 0.25);
  if (iqr <= 0.0) iqr = 1.0;
  for (auto& x : v) x = (x - med) / iqr;
  return v;
}

EnsembleResult ensemble(Run& run, const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n, std::int64_t M,
                        bool blocks = false) {
  SamplerOptions options;
  options.store_blocks = blocks;
  return sample_ensemble(alpha, rule, n, M, run.seed, run.workers, options);
}

// --- subcommands -------------------------------------------------------------

void cmd_classify(Run& run) {
  const auto alpha = run.alpha();
  const auto c = classify(alpha);
  const auto moments = alpha_moments(alpha);
  json result = to_json(c);
  result["mean_rho"] = moments.mean_rho;
  result["mean_log_rho"] = moments.mean_log_rho;
  *run.out << result.dump() << "\n";
  if (!run.out_dir.empty()) {
    run.write_json("classification.json", result);
    run.write_manifest();
  }
}

void cmd_simulate(Run& run) {
  const auto alpha = run.alpha();
  const auto rule = run.rule();
  const auto n = get_int(run.config, "n");
  if (n < 0) throw ConfigError("n must be nonnegative");
  const auto M = run.samples();
  const bool blocks = get_bool(run.config, "store_blocks", false);
  const bool trajectory = get_bool(run.config, "trajectory", false);
  const auto e = ensemble(run, alpha, rule, n, M, blocks);
  write_ensemble(run, "ensemble", e, alpha, rule);
  if (trajectory) {
    BlockSampler sampler(alpha, rule, n);
    const auto path = sampler.trajectory(run.seed, 0);
    std::string csv = "step,position\n";
    for (std::size_t i = 0; i < path.size(); ++i) csv += fmt::format("{},{}\n", i, path[i]);
    run.write("trajectory.csv", csv);
  }
  run.write_manifest();
  *run.out << fmt::format("wrote {} samples of X_{} to {}\n", M, n, run.out_dir.string());
}

void write_kesten_table(Run& run, const std::string& name) {
  const double lo = get_double(run.config, "x_min", -6.0);
  const double hi = get_double(run.config, "x_max", 6.0);
  const auto points = get_int(run.config, "points", 241);
  if (!(hi > lo) || points < 2) throw ConfigError("table needs x_min < x_max and at least two points");
  std::string csv = "x,pdf,cdf\n";
  for (std::int64_t i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    csv += fmt::format("{},{},{}\n", num(x), num(kesten_pdf(x)), num(kesten_cdf(x)));
  }
  run.write(name, csv);
}

void cmd_tables(Run& run) {
  write_kesten_table(run, "kesten_table.csv");
  run.write_manifest();
  *run.out << fmt::format("wrote kesten_table.csv to {}\n", run.out_dir.string());
}

// Targets of the no-cooling theorems from the gap law seen up to n.
NoCoolingTargets nocooling_targets(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n) {
  const auto nu = empirical_measure(rule, n);
  double a = 0.0;
  for (auto [l, w] : nu) a += static_cast<double>(l) * w;
  return no_cooling_targets(alpha, nu, a);
}

void exp_nocooling(Run& run, bool clt) {
  const auto alpha = run.alpha();
  const auto rule = run.rule();
  if (rule.is_cooling()) throw ConfigError("rule must not cool (linear or explicit) for " + run.kind);
  const auto n = get_int(run.config, "n");
  if (n < 1) throw ConfigError("n must be positive");
  const auto M = run.samples();
  const auto targets = nocooling_targets(alpha, rule, n);
  const double level = get_double(run.config, "level", 0.01);
  const double tolerance = get_double(run.config, "tolerance", 0.01);
  if (clt && M < kMinKsSamples) throw ConfigError("clt-nocooling needs M >= 50");
  if (clt && !(targets.sigma2_nu > 0.0)) throw ConfigError("degenerate walk: sigma_nu^2 = 0");

  const auto e = ensemble(run, alpha, rule, n, M);
  write_ensemble(run, "ensemble", e, alpha, rule);
  const auto speeds = scaled(e, 0.0, static_cast<double>(n));
  const double mean_speed = sample_mean(speeds);
  json report = {{"experiment", run.kind},
                 {"n", n},
                 {"M", M},
                 {"v_nu", targets.v_nu},
                 {"sigma2_nu", targets.sigma2_nu},
                 {"max_gap_ratio", max_gap_ratio(rule, n)},
                 {"mean_speed", mean_speed},
                 {"speed_error", std::abs(mean_speed - targets.v_nu)}};
  if (clt) {
    const double nd = static_cast<double>(n);
    const auto z = scaled(e, targets.v_nu * nd, std::sqrt(targets.sigma2_nu * nd));
    auto ks = ks_test(z, LimitLaw::normal(), level);
    ks.metadata = {{"law", "normal(0,1)"}, {"standardization", "(X_n - v_nu n) / (sigma_nu sqrt(n))"}};
    report["ks"] = ks.to_json();
    report["verdict"] = ks.passed ? "pass" : "fail";
  } else {
    report["tolerance"] = tolerance;
    report["verdict"] = std::abs(mean_speed - targets.v_nu) <= tolerance ? "pass" : "fail";
  }
  run.write_json("report.json", report);
  run.write_manifest();
  *run.out << report.dump() << "\n";
}

void exp_wlln(Run& run) {
  const auto alpha = run.alpha();
  const auto rule = run.rule();
  const auto c = classify(alpha);
  if (c.kind == RegimeKind::Recurrent) throw ConfigError("alpha must be transient");
  if (!rule.is_cooling()) throw ConfigError("rule must cool (polynomial, exponential or double_exponential)");
  const auto grid = get_grid(run.config);
  const auto M = run.samples();
  const double eps = get_double(run.config, "epsilon", 0.05);
  for (auto n : grid)
    if (n < 1) throw ConfigError("horizons must be positive");

  json rows = json::array();
  std::string summary = "n,mean_speed,fraction_outside\n";
  for (auto n : grid) {
    const auto e = ensemble(run, alpha, rule, n, M);
    write_ensemble(run, fmt::format("ensemble_n{}", n), e, alpha, rule);
    const auto speeds = scaled(e, 0.0, static_cast<double>(n));
    const double mean_speed = sample_mean(speeds);
    const auto outside = std::count_if(speeds.begin(), speeds.end(),
                                       [&](double v) { return std::abs(v - c.speed) > eps; });
    const double fraction = static_cast<double>(outside) / static_cast<double>(M);
    rows.push_back({{"n", n},
                    {"mean_speed", mean_speed},
                    {"speed_error", std::abs(mean_speed - c.speed)},
                    {"fraction_outside", fraction}});
    summary += fmt::format("{},{},{}\n", n, num(mean_speed), num(fraction));
  }
  run.write("wlln.csv", summary);
  json report = {{"experiment", run.kind}, {"regime", std::string(to_string(c.kind))}, {"v_mu", c.speed},
                 {"epsilon", eps},         {"M", M},                                  {"grid", rows}};
  run.write_json("report.json", report);
  run.write_manifest();
  *run.out << report.dump() << "\n";
}

void exp_gaussian(Run& run) {
  const auto alpha = run.alpha();
  const auto rule = run.rule();
  const auto c = classify(alpha);
  if (c.kind != RegimeKind::Recurrent) throw ConfigError("alpha must be recurrent");
  if (rule.kind() != CoolingKind::Polynomial && rule.kind() != CoolingKind::Exponential)
    throw ConfigError("rule must be polynomial or exponential");
  const auto grid = get_grid(run.config);
  const auto M = run.samples();
  if (M < kMinKsSamples) throw ConfigError("gaussian-recurrent needs M >= 50");
  for (auto n : grid)
    if (n < 3) throw ConfigError("horizons must be at least 3");
  const bool keep_blocks = get_bool(run.config, "store_blocks", false);
  const bool symmetric = alpha.is_symmetric();
  const double level = get_double(run.config, "level", 0.01);

  json rows = json::array();
  std::string summary = "n,b_hat,chi_theory,ratio,ks\n";
  std::optional<double> previous;
  bool non_increasing = true;
  for (auto n : grid) {
    auto e = ensemble(run, alpha, rule, n, M, true);
    const auto moments = block_moment_estimates(e, 4.0);
    const double center = symmetric ? 0.0 : sample_mean(scaled(e, 0.0, 1.0));
    const auto z = scaled(e, center, std::sqrt(moments.b_hat));
    const auto ks = ks_test(z, LimitLaw::normal(), level);
    const double theory = chi_n_theoretical(rule, c.sigma2_mu, static_cast<double>(n));
    if (previous && ks.statistic > *previous) non_increasing = false;
    previous = ks.statistic;
    rows.push_back({{"n", n},
                    {"a_hat", moments.a_hat},
                    {"b_hat", moments.b_hat},
                    {"chi4_hat", moments.chi_hat},
                    {"lyapunov_ratio_hat", moments.chi_hat / (moments.b_hat * moments.b_hat)},
                    {"chi_theory", theory},
                    {"ratio_to_theory", moments.b_hat / theory},
                    {"ks", ks.to_json()}});
    summary += fmt::format("{},{},{},{},{}\n", n, num(moments.b_hat), num(theory), num(moments.b_hat / theory),
                           num(ks.statistic));
    if (!keep_blocks) {
      e.blocks.clear();
      e.block_columns = 0;
    }
    write_ensemble(run, fmt::format("ensemble_n{}", n), e, alpha, rule);
  }
  run.write("gaussian.csv", summary);
  json report = {{"experiment", run.kind},
                 {"centering", symmetric ? "zero (symmetric alpha)" : "empirical mean"},
                 {"sigma2_mu", c.sigma2_mu},
                 {"M", M},
                 {"ks_non_increasing", non_increasing},
                 {"grid", rows}};
  run.write_json("report.json", report);
  run.write_manifest();
  *run.out << report.dump() << "\n";
}

void exp_crossover(Run& run) {
  const auto alpha = run.alpha();
  const auto c = classify(alpha);
  if (c.kind == RegimeKind::Recurrent) throw ConfigError("alpha must be transient");
  const auto n = get_int(run.config, "n");
  if (n < 1) throw ConfigError("n must be positive");
  const auto M = run.samples();
  if (M < 2) throw ConfigError("crossover-scan needs M >= 2");
  const double B = get_double(run.config, "B", 1.0);
  const auto betas = get_doubles(run.config, "betas", {1.2, 1.6, 2.0, 2.4, 2.8, 3.2, 3.6, 4.0});
  std::vector<CoolingRule> rules;
  for (double beta : betas) rules.push_back(CoolingRule::polynomial(B, beta));

  // Static reference: the environment is never resampled.
  const auto frozen = CoolingRule::explicit_times({0});
  const auto reference = ensemble(run, alpha, frozen, n, M);
  write_ensemble(run, "static_reference", reference, alpha, frozen);
  const auto reference_shape = robust_standardize(scaled(reference, 0.0, 1.0));

  std::string csv = "beta,ks_normal,ks_static_shape\n";
  json rows = json::array();
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto e = ensemble(run, alpha, rules[i], n, M);
    const auto raw = scaled(e, 0.0, 1.0);
    const double mean = sample_mean(raw);
    const double sd = std::sqrt(empirical_moments(raw, 2.0));
    const double ks_normal =
        sd > 0.0 ? ks_statistic(scaled(e, mean, sd), [](double x) { return normal_cdf(x); }) : 1.0;
    const double ks_shape = ks_two_sample(robust_standardize(raw), reference_shape);
    csv += fmt::format("{},{},{}\n", num(betas[i]), num(ks_normal), num(ks_shape));
    rows.push_back({{"beta", betas[i]}, {"ks_normal", ks_normal}, {"ks_static_shape", ks_shape}});
  }
  run.write("crossover.csv", csv);
  json report = {{"experiment", run.kind},
                 {"regime", std::string(to_string(c.kind))},
                 {"s", c.s_exponent && std::isfinite(*c.s_exponent) ? json(*c.s_exponent) : json("inf")},
                 {"n", n},
                 {"M", M},
                 {"scan", rows}};
  run.write_json("report.json", report);
  run.write_manifest();
  *run.out << report.dump() << "\n";
}

void exp_oracle(Run& run) {
  const auto alpha = run.alpha();
  const auto rule = run.rule();
  const auto n = get_int(run.config, "n");
  if (n < 0) throw ConfigError("n must be nonnegative");
  const auto M = run.samples();
  const double tolerance = get_double(run.config, "tolerance", 0.005);
  const auto exact = exact_cooling_pmf(alpha, rule, n);
  const auto e = ensemble(run, alpha, rule, n, M);
  write_ensemble(run, "ensemble", e, alpha, rule);
  const auto empirical = empirical_pmf(e.positions);
  run.write("pmf.csv", pmf_csv(exact));
  run.write("empirical_pmf.csv", pmf_csv(empirical));
  const double tv = total_variation(exact, empirical);
  json report = {{"experiment", run.kind}, {"n", n},
                 {"M", M},                 {"total_variation", tv},
                 {"tolerance", tolerance}, {"verdict", tv <= tolerance ? "pass" : "fail"}};
  run.write_json("report.json", report);
  run.write_manifest();
  *run.out << report.dump() << "\n";
}

void exp_lyapunov(Run& run) {
  const auto rule = run.rule();
  const double p = get_double(run.config, "p", 4.0);
  std::vector<std::int64_t> grid;
  if (run.config.contains("n_grid"))
    grid = get_grid(run.config);
  else
    for (std::int64_t n = 1000; n <= 1'000'000'000; n *= 10) grid.push_back(n);
  const auto ratios = lyapunov_ratio_curve(rule, p, grid);
  std::string csv = "n,ratio\n";
  bool decreasing = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv += fmt::format("{},{}\n", grid[i], num(ratios[i]));
    if (i > 0 && ratios[i] >= ratios[i - 1]) decreasing = false;
  }
  run.write("curve.csv", csv);
  json report = {{"experiment", run.kind},
                 {"p", p},
                 {"rule", to_json(rule)},
                 {"strictly_decreasing", decreasing},
                 {"drop_factor", ratios.front() / ratios.back()},
                 {"min_ratio", *std::min_element(ratios.begin(), ratios.end())},
                 {"ratios", ratios}};
  run.write_json("report.json", report);
  run.write_manifest();
  *run.out << report.dump() << "\n";
}

void exp_kesten_tables(Run& run) {
  write_kesten_table(run, "kesten_table.csv");
  json report = {{"experiment", run.kind}, {"sigma2_V", kesten_variance()}, {"mean_abs_V", kesten_abs_moment(1.0)}};
  run.write_json("report.json", report);
  run.write_manifest();
  *run.out << report.dump() << "\n";
}

void cmd_experiment(Run& run) {
  if (run.kind == "lln-nocooling") return exp_nocooling(run, false);
  if (run.kind == "clt-nocooling") return exp_nocooling(run, true);
  if (run.kind == "wlln-cooling") return exp_wlln(run);
  if (run.kind == "gaussian-recurrent") return exp_gaussian(run);
  if (run.kind == "crossover-scan") return exp_crossover(run);
  if (run.kind == "oracle-check") return exp_oracle(run);
  if (run.kind == "kesten-tables") return exp_kesten_tables(run);
  if (run.kind == "lyapunov-curve") return exp_lyapunov(run);
  throw ConfigError("unknown experiment kind '" + run.kind + "'");
}

json load_json(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config " + path);
  try {
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

bool is_precondition(ErrorKind kind) { return kind != ErrorKind::NonTermination && kind != ErrorKind::Overflow; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random walks in cooling random environments: sampling and limit-law checks", "rwcre"};
  app.set_version_flag("--version", std::string(RWCRE_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir;
  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", config_path, "JSON config, or the manifest.json of an earlier run")->required();
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--workers", workers, "OpenMP threads (overrides the config)")->check(CLI::PositiveNumber);
    auto* opt = sub->add_option("--out", out_dir, "output directory");
    if (needs_out) opt->required();
  };

  auto* classify_cmd = app.add_subcommand("classify", "print the regime of alpha as JSON");
  add_common(classify_cmd, false);
  auto* simulate_cmd = app.add_subcommand("simulate", "sample an ensemble of X_n");
  add_common(simulate_cmd, true);
  auto* experiment_cmd = app.add_subcommand("experiment", "run one of the verification experiments");
  std::string kind;
  experiment_cmd->add_option("kind", kind, "experiment kind")->check(CLI::IsMember(kExperimentKinds));
  add_common(experiment_cmd, true);
  auto* tables_cmd = app.add_subcommand("tables", "dump Kesten pdf/cdf grids as CSV");
  tables_cmd->add_option("--config", config_path, "optional JSON with x_min, x_max, points");
  tables_cmd->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Run run;
    run.out = &out;
    run.out_dir = out_dir;
    json config = json::object();
    if (!config_path.empty()) config = load_json(config_path);
    if (!config.is_object()) throw ConfigError("config must be a JSON object");

    // A manifest carries the resolved config of the run it describes.
    if (config.contains("manifest_version")) {
      const auto recorded_kind = config.value("kind", std::string());
      if (kind.empty()) kind = recorded_kind;
      if (!recorded_kind.empty() && kind != recorded_kind)
        throw ConfigError("manifest records experiment '" + recorded_kind + "', not '" + kind + "'");
      config = require(config, "config");
    }

    if (*experiment_cmd) {
      if (kind.empty()) throw ConfigError("experiment kind is required");
      run.command = "experiment";
      run.kind = kind;
    } else if (*classify_cmd) {
      run.command = "classify";
    } else if (*simulate_cmd) {
      run.command = "simulate";
    } else {
      run.command = "tables";
    }

    run.seed = seed ? *seed : static_cast<std::uint64_t>(get_int(config, "seed", 0));
    run.workers = workers ? *workers : static_cast<int>(get_int(config, "workers", 1));
    if (run.workers < 1) throw ConfigError("workers must be at least 1");
    config["seed"] = run.seed;
    config["workers"] = run.workers;
    run.config = config;

    if (run.command == "classify") cmd_classify(run);
    if (run.command == "simulate") cmd_simulate(run);
    if (run.command == "experiment") cmd_experiment(run);
    if (run.command == "tables") cmd_tables(run);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_precondition(e.kind()) ? kExitConfig : kExitRuntime;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace rwcre::cli
