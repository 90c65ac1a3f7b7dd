#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "locspec/io.hpp"
#include "locspec/local.hpp"
#include "locspec/mc.hpp"
#include "locspec/preperiodogram.hpp"
#include "locspec/spectral_mean.hpp"
#include "locspec/whittle.hpp"

namespace {

using locspec::ConfigError;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kModelError = 3;
constexpr int kVerifyFailure = 4;

const json& field(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError("missing config field: " + key);
  return *it;
}

locspec::TvArmaModel model_from(const json& cfg) {
  locspec::TvArmaModel model = locspec::parse_model(field(cfg, "model"));
  model.require_valid();
  return model;
}

locspec::Sample sample_from(const json& cfg, const locspec::TvArmaModel& model) {
  long n = field(cfg, "n").get<long>();
  if (n < 1) throw ConfigError("n must be positive");
  auto seed = cfg.value("seed", std::uint64_t{1});
  long burn_in = cfg.value("burn_in", -1L);
  return locspec::simulate(model, n, seed, burn_in);
}

locspec::Taper taper_from(const json& cfg) {
  return cfg.contains("taper") ? locspec::parse_taper(cfg.at("taper"))
                               : locspec::Taper::none();
}

double bandwidth_from(const json& cfg, long n) {
  const json& b = field(cfg, "bandwidth");
  if (b.is_string()) {
    if (b.get<std::string>() != "auto")
      throw ConfigError("bandwidth must be a number or \"auto\"");
    return std::pow(static_cast<double>(n), -0.2);
  }
  double v = b.get<double>();
  if (!(v > 0.0 && v <= 1.0)) throw ConfigError("bandwidth outside (0, 1]");
  return v;
}

std::vector<double> u_grid_from(const json& cfg, double b) {
  const json& g = field(cfg, "u_grid");
  std::vector<double> grid;
  if (g.is_array()) {
    grid = g.get<std::vector<double>>();
  } else {
    int points = g.value("points", 25);
    if (points < 2) throw ConfigError("u_grid.points >= 2");
    for (int i = 0; i < points; ++i)
      grid.push_back(0.5 * b + (1.0 - b) * i / (points - 1));
  }
  for (double u : grid)
    if (u < 0.5 * b - 1e-12 || u > 1.0 - 0.5 * b + 1e-12)
      throw ConfigError("u_grid point outside [b/2, 1 - b/2]");
  return grid;
}

locspec::FrequencyGrid grid_from(const json& cfg, long n) {
  int points = cfg.value("grid_points", 0);
  return points > 0 ? locspec::FrequencyGrid(points)
                    : locspec::FrequencyGrid::exactness_grade(n);
}

std::string slug(const std::string& command) {
  std::string s = command;
  for (char& c : s)
    if (c == ' ' || c == '-') c = '_';
  return s;
}

struct RunOutput {
  int exit_code = kOk;
  std::vector<std::string> outputs;
};

RunOutput run_simulate(const json& cfg, const std::string& dir) {
  locspec::TvArmaModel model = model_from(cfg);
  locspec::Sample s = sample_from(cfg, model);
  std::vector<std::vector<double>> rows;
  for (long t = 1; t <= s.n; ++t)
    rows.push_back({static_cast<double>(t), s[t]});
  std::string path = dir + "/sample.csv";
  locspec::write_csv(path, {"t", "x"}, rows);
  return {kOk, {path}};
}

RunOutput run_spectral_preperiodogram(const json& cfg, const std::string& dir) {
  locspec::TvArmaModel model = model_from(cfg);
  locspec::Sample s = sample_from(cfg, model);
  locspec::Taper taper = taper_from(cfg);
  locspec::FrequencyGrid grid = grid_from(cfg, s.n);
  std::vector<long> ts;
  if (cfg.contains("t"))
    ts = cfg.at("t").get<std::vector<long>>();
  else
    ts = {std::max(1L, s.n / 4), std::max(1L, s.n / 2),
          std::max(1L, 3 * s.n / 4)};
  std::vector<std::vector<double>> rows;
  for (long t : ts) {
    if (t < 1 || t > s.n) throw ConfigError("t outside 1..n");
    std::vector<double> J = locspec::pre_periodogram(s, taper, t, grid);
    for (int m = 0; m < grid.size(); ++m)
      rows.push_back({static_cast<double>(t), grid.nodes[m],
                      J[static_cast<size_t>(m)]});
  }
  std::string path = dir + "/preperiodogram.csv";
  locspec::write_csv(path, {"t", "lambda", "value"}, rows);
  return {kOk, {path}};
}

RunOutput run_spectral_mean(const json& cfg, const std::string& dir) {
  locspec::TvArmaModel model = model_from(cfg);
  locspec::Sample s = sample_from(cfg, model);
  locspec::Taper taper = taper_from(cfg);
  locspec::SpectralFunctional phi =
      locspec::parse_functional(field(cfg, "functional"));

  double fn = locspec::spectral_mean_lag(s, taper, phi);
  double f_limit = locspec::theoretical_functional(model, taper, phi);
  json out;
  out["n"] = s.n;
  out["spectral_mean"] = fn;
  out["limit"] = f_limit;
  out["scaled_deviation"] =
      std::sqrt(static_cast<double>(s.n)) * (fn - f_limit);
  if (cfg.value("check_dual", false)) {
    locspec::FrequencyGrid grid = grid_from(cfg, s.n);
    out["spectral_mean_freq"] = locspec::spectral_mean_freq(s, taper, phi, grid);
  }
  if (cfg.value("stationary_check", false)) {
    locspec::FrequencyGrid grid = grid_from(cfg, s.n);
    std::vector<double> avg(static_cast<size_t>(grid.size()), 0.0);
    for (long t = 1; t <= s.n; ++t) {
      std::vector<double> J = locspec::pre_periodogram(s, taper, t, grid);
      for (size_t m = 0; m < avg.size(); ++m) avg[m] += J[m];
    }
    std::vector<double> pg = locspec::classical_periodogram(s, grid);
    double worst = 0.0;
    for (size_t m = 0; m < avg.size(); ++m)
      worst = std::max(worst,
                       std::abs(avg[m] / static_cast<double>(s.n) - pg[m]));
    out["stationary_identity_max_deviation"] = worst;
  }
  std::string path = dir + "/spectral_mean.json";
  locspec::write_text(path, out.dump(2) + "\n");
  return {kOk, {path}};
}

RunOutput run_spectral_norms(const json& cfg, const std::string& dir) {
  locspec::SpectralFunctional phi =
      locspec::parse_functional(field(cfg, "functional"));
  long n = cfg.value("n", 0L);
  locspec::Taper taper = taper_from(cfg);
  locspec::FunctionalNorms nm = locspec::norms(phi, n, &taper);
  json out;
  out["rho2"] = nm.rho2;
  out["rho2_n"] = nm.rho2n;
  out["rho2_n_tapered"] = nm.rho2nh;
  out["rho_inf"] = nm.rho_inf;
  out["v_sigma"] = nm.v_sigma;
  out["norm_inf_V"] = nm.norm_inf_V;
  out["norm_V_inf"] = nm.norm_V_inf;
  out["norm_V_V"] = nm.norm_V_V;
  out["norm_inf_inf"] = nm.norm_inf_inf;
  std::string path = dir + "/norms.json";
  locspec::write_text(path, out.dump(2) + "\n");
  return {kOk, {path}};
}

RunOutput run_fit_whittle(const json& cfg, const std::string& dir) {
  locspec::TvArmaModel model = model_from(cfg);
  locspec::Sample s = sample_from(cfg, model);
  locspec::ParametricSpectralFamily family =
      locspec::parse_family(field(cfg, "family"));
  locspec::OptimizerConfig opt_cfg =
      cfg.contains("optimizer") ? locspec::parse_optimizer(cfg.at("optimizer"))
                                : locspec::OptimizerConfig{};
  int grid_points = cfg.value("grid_points", 0);
  locspec::WhittleFitResult fit =
      locspec::fit_whittle(s, family, opt_cfg, grid_points);
  json out;
  out["family"] = fit.family_name;
  out["theta"] = std::vector<double>(
      fit.opt.theta.data(), fit.opt.theta.data() + fit.opt.theta.size());
  out["value"] = fit.opt.value;
  out["converged"] = fit.opt.converged;
  out["iterations"] = fit.opt.iterations;
  out["projected_grad_norm"] = fit.opt.projected_grad_norm;
  out["at_boundary"] = fit.opt.at_boundary;
  out["min_fisher_eigenvalue"] = fit.min_fisher_eigenvalue;
  out["grid_size"] = fit.grid_size;
  std::string path = dir + "/whittle_fit.json";
  locspec::write_text(path, out.dump(2) + "\n");
  return {kOk, {path}};
}

RunOutput run_fit_yule_walker(const json& cfg, const std::string& dir) {
  locspec::TvArmaModel model = model_from(cfg);
  locspec::Sample s = sample_from(cfg, model);
  int p = field(cfg, "p").get<int>();
  locspec::SmoothingKernel kernel =
      cfg.contains("kernel") ? locspec::parse_kernel(cfg.at("kernel"))
                             : locspec::SmoothingKernel();
  double b = bandwidth_from(cfg, s.n);
  std::vector<double> u_grid = u_grid_from(cfg, b);
  std::vector<std::string> columns{"u"};
  for (int j = 1; j <= p; ++j) columns.push_back("alpha_" + std::to_string(j));
  columns.insert(columns.end(), {"sigma2", "condition", "negative_variance"});
  std::vector<std::vector<double>> rows;
  for (double u : u_grid) {
    locspec::LocalYuleWalkerResult r =
        locspec::local_yule_walker(s, p, kernel, b, u);
    std::vector<double> row{u};
    for (int j = 0; j < p; ++j) row.push_back(r.alpha[j]);
    row.push_back(r.sigma2);
    row.push_back(r.condition);
    row.push_back(r.negative_variance ? 1.0 : 0.0);
    rows.push_back(std::move(row));
  }
  std::string path = dir + "/yule_walker.csv";
  locspec::write_csv(path, columns, rows);
  return {kOk, {path}};
}

RunOutput run_fit_local_whittle(const json& cfg, const std::string& dir) {
  locspec::TvArmaModel model = model_from(cfg);
  locspec::Sample s = sample_from(cfg, model);
  locspec::ParametricSpectralFamily family =
      locspec::parse_family(field(cfg, "family"));
  locspec::SmoothingKernel kernel =
      cfg.contains("kernel") ? locspec::parse_kernel(cfg.at("kernel"))
                             : locspec::SmoothingKernel();
  double b = bandwidth_from(cfg, s.n);
  std::vector<double> u_grid = u_grid_from(cfg, b);
  locspec::OptimizerConfig opt_cfg =
      cfg.contains("optimizer") ? locspec::parse_optimizer(cfg.at("optimizer"))
                                : locspec::OptimizerConfig{};
  int grid_points = cfg.value("grid_points", 0);
  locspec::LocalFitResult fit = locspec::fit_local_whittle(
      s, family, kernel, b, u_grid, opt_cfg, grid_points);

  std::vector<std::string> columns{"u"};
  for (int j = 0; j < family.dim(); ++j)
    columns.push_back("theta_" + std::to_string(j));
  columns.insert(columns.end(),
                 {"grad_norm", "converged", "at_boundary", "failed"});
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < fit.u.size(); ++i) {
    std::vector<double> row{fit.u[i]};
    for (int j = 0; j < family.dim(); ++j) row.push_back(fit.theta[i][j]);
    row.push_back(fit.grad_norm[i]);
    row.push_back(fit.converged[i]);
    row.push_back(fit.at_boundary[i]);
    row.push_back(fit.failed[i]);
    rows.push_back(std::move(row));
  }
  std::string csv_path = dir + "/local_whittle.csv";
  locspec::write_csv(csv_path, columns, rows);
  json summary;
  summary["family"] = fit.family_name;
  summary["kernel"] = fit.kernel_name;
  summary["bandwidth"] = fit.bandwidth;
  summary["points"] = fit.u.size();
  std::string json_path = dir + "/local_whittle.json";
  locspec::write_text(json_path, summary.dump(2) + "\n");
  return {kOk, {csv_path, json_path}};
}

RunOutput write_verify_outputs(const locspec::McReport& report,
                               const std::string& dir) {
  RunOutput out;
  std::string path = dir + "/" + report.experiment + "_report.json";
  locspec::write_text(path, locspec::report_to_json(report).dump(2) + "\n");
  out.outputs.push_back(path);
  for (std::string& p :
       locspec::write_report_tables(dir, report.experiment, report))
    out.outputs.push_back(std::move(p));
  out.exit_code = report.pass ? kOk : kVerifyFailure;
  return out;
}

RunOutput run_verify_clt(const json& cfg, const std::string& dir) {
  locspec::CltConfig c{model_from(cfg)};
  c.taper = taper_from(cfg);
  for (const auto& f : field(cfg, "functionals"))
    c.phis.push_back(locspec::parse_functional(f));
  c.n = field(cfg, "n").get<long>();
  c.reps = cfg.value("reps", c.reps);
  c.base_seed = cfg.value("base_seed", c.base_seed);
  c.se_multiplier = cfg.value("se_multiplier", c.se_multiplier);
  c.threads = cfg.value("threads", 0);
  if (cfg.contains("kappa4_override"))
    c.kappa4_override = cfg.at("kappa4_override").get<double>();
  return write_verify_outputs(locspec::mc_clt(c), dir);
}

RunOutput run_verify_rate(const json& cfg, const std::string& dir) {
  locspec::RateConfig c{model_from(cfg)};
  if (cfg.contains("kernel"))
    c.kernel = locspec::parse_kernel(cfg.at("kernel")).kind();
  c.ns = field(cfg, "ns").get<std::vector<long>>();
  c.reps = cfg.value("reps", c.reps);
  c.base_seed = cfg.value("base_seed", c.base_seed);
  c.u_points = cfg.value("u_points", c.u_points);
  c.slope_lo = cfg.value("slope_lo", c.slope_lo);
  c.slope_hi = cfg.value("slope_hi", c.slope_hi);
  c.bootstrap = cfg.value("bootstrap", c.bootstrap);
  c.threads = cfg.value("threads", 0);
  return write_verify_outputs(locspec::mc_rate(c), dir);
}

RunOutput run_verify_bias(const json& cfg, const std::string& dir) {
  locspec::BiasConfig c{model_from(cfg)};
  c.taper = taper_from(cfg);
  c.phi = locspec::parse_functional(field(cfg, "functional"));
  c.ns = field(cfg, "ns").get<std::vector<long>>();
  c.slack_ratio = cfg.value("slack_ratio", c.slack_ratio);
  return write_verify_outputs(locspec::mc_bias(c), dir);
}

RunOutput run_verify_maxbound(const json& cfg, const std::string& dir) {
  locspec::MaxboundConfig c{model_from(cfg)};
  c.ns = field(cfg, "ns").get<std::vector<long>>();
  c.reps = cfg.value("reps", c.reps);
  c.base_seed = cfg.value("base_seed", c.base_seed);
  c.slack_ratio = cfg.value("slack_ratio", c.slack_ratio);
  c.threads = cfg.value("threads", 0);
  return write_verify_outputs(locspec::mc_maxbound(c), dir);
}

RunOutput run_verify_tail(const json& cfg, const std::string& dir) {
  locspec::TailConfig c{model_from(cfg)};
  c.taper = taper_from(cfg);
  c.phi = locspec::parse_functional(field(cfg, "functional"));
  c.n = field(cfg, "n").get<long>();
  c.reps = cfg.value("reps", c.reps);
  c.base_seed = cfg.value("base_seed", c.base_seed);
  c.threads = cfg.value("threads", 0);
  return write_verify_outputs(locspec::mc_tail(c), dir);
}

RunOutput dispatch(const std::string& command, const json& cfg,
                   const std::string& dir) {
  if (command == "simulate") return run_simulate(cfg, dir);
  if (command == "spectral preperiodogram")
    return run_spectral_preperiodogram(cfg, dir);
  if (command == "spectral mean") return run_spectral_mean(cfg, dir);
  if (command == "spectral norms") return run_spectral_norms(cfg, dir);
  if (command == "fit whittle") return run_fit_whittle(cfg, dir);
  if (command == "fit local-whittle") return run_fit_local_whittle(cfg, dir);
  if (command == "fit yule-walker") return run_fit_yule_walker(cfg, dir);
  if (command == "verify clt") return run_verify_clt(cfg, dir);
  if (command == "verify rate") return run_verify_rate(cfg, dir);
  if (command == "verify bias") return run_verify_bias(cfg, dir);
  if (command == "verify maxbound") return run_verify_maxbound(cfg, dir);
  if (command == "verify tail") return run_verify_tail(cfg, dir);
  throw ConfigError("unknown command: " + command);
}

int execute(const std::string& command, json cfg, const std::string& dir,
            const std::string& config_path, bool have_seed,
            std::uint64_t seed_override, int threads) {
  auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(dir);
  if (have_seed) {
    if (cfg.contains("base_seed"))
      cfg["base_seed"] = seed_override;
    else
      cfg["seed"] = seed_override;
  }
  if (threads > 0) cfg["threads"] = threads;

  RunOutput out = dispatch(command, cfg, dir);

  locspec::RunManifest manifest;
  manifest.command = command;
  manifest.config_path = config_path;
  manifest.config = cfg;
  manifest.outputs = out.outputs;
  manifest.seed = cfg.contains("base_seed")
                      ? cfg["base_seed"].get<std::uint64_t>()
                      : cfg.value("seed", std::uint64_t{0});
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  locspec::write_manifest(dir + "/" + slug(command) + "_manifest.json",
                          manifest);
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally stationary time series: simulation, spectral means, "
               "Whittle fits, Monte Carlo verification"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", manifest_path;
  std::uint64_t seed_override = 0;
  int threads = 0;
  std::string command;
  CLI::Option* seed_opt = nullptr;

  auto add_leaf = [&](CLI::App* parent, const std::string& name,
                      const std::string& full, const std::string& desc) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out-dir", out_dir, "output directory");
    CLI::Option* so =
        sub->add_option("--seed-override", seed_override, "replace the seed");
    sub->add_option("--threads", threads, "worker count hint");
    sub->callback([&command, &seed_opt, full, so]() {
      command = full;
      seed_opt = so;
    });
    return sub;
  };

  add_leaf(&app, "simulate", "simulate", "simulate a time-varying ARMA path");

  CLI::App* spectral =
      app.add_subcommand("spectral", "pre-periodogram and spectral means");
  spectral->require_subcommand(1);
  add_leaf(spectral, "preperiodogram", "spectral preperiodogram",
           "single-time spectral estimates");
  add_leaf(spectral, "mean", "spectral mean", "spectral-mean functional");
  add_leaf(spectral, "norms", "spectral norms", "functional norm menu");

  CLI::App* fit = app.add_subcommand("fit", "parametric spectral fits");
  fit->require_subcommand(1);
  add_leaf(fit, "whittle", "fit whittle", "global Whittle fit");
  add_leaf(fit, "local-whittle", "fit local-whittle",
           "kernel-localized Whittle fit");
  add_leaf(fit, "yule-walker", "fit yule-walker",
           "closed-form local AR fit");

  CLI::App* verify = app.add_subcommand("verify", "Monte Carlo experiments");
  verify->require_subcommand(1);
  add_leaf(verify, "clt", "verify clt", "limit covariance experiment");
  add_leaf(verify, "rate", "verify rate", "uniform rate experiment");
  add_leaf(verify, "bias", "verify bias", "exact-expectation bias sweep");
  add_leaf(verify, "maxbound", "verify maxbound", "max exceedance experiment");
  add_leaf(verify, "tail", "verify tail", "exceedance curve experiment");

  CLI::App* rerun =
      app.add_subcommand("rerun", "reproduce a run from its manifest");
  rerun->add_option("--manifest", manifest_path, "manifest JSON")->required();
  rerun->add_option("--out-dir", out_dir, "output directory");
  rerun->add_option("--threads", threads, "worker count hint");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(rerun)) {
      locspec::RunManifest m = locspec::load_manifest(manifest_path);
      return execute(m.command, m.config, out_dir, m.config_path, false, 0,
                     threads);
    }
    bool have_seed = seed_opt != nullptr && seed_opt->count() > 0;
    json cfg = locspec::load_json(config_path);
    return execute(command, cfg, out_dir, config_path, have_seed,
                   seed_override, threads);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const locspec::InvalidModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kModelError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kModelError;
  }
}
