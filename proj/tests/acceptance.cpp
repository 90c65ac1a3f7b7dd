// Acceptance gate: one pass/fail line per criterion, tolerances pinned in
// code. argv[1] is the path to the command-line binary (used for the
// reproducibility criterion). Exit code 0 iff every criterion passes.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "locspec/io.hpp"
#include "locspec/local.hpp"
#include "locspec/mc.hpp"
#include "locspec/preperiodogram.hpp"
#include "locspec/rng.hpp"
#include "locspec/spectral_mean.hpp"
#include "locspec/whittle.hpp"

namespace fs = std::filesystem;
using namespace locspec;

namespace {

constexpr double kPi = M_PI;

int g_failures = 0;

void report(int index, const std::string& name, bool pass, double value,
            double threshold) {
  std::cout << "[" << (pass ? "PASS" : "FAIL") << "] criterion " << index
            << " (" << name << "): value " << std::setprecision(6) << value
            << " vs threshold " << threshold << "\n";
  if (!pass) ++g_failures;
}

TvArmaModel smooth_tvar1() {
  return tvar1_model(CoefficientCurve::polynomial({-0.3, -0.4}));
}

// ---------------------------------------------------------------------------
// 1. The time average of the single-time spectral estimate equals the
//    classical periodogram on every grid node.
void criterion_identity() {
  const double tol = 1e-10;
  double worst = 0.0;
  TvArmaModel model = smooth_tvar1();
  for (long n : {16L, 64L, 257L}) {
    FrequencyGrid grid = FrequencyGrid::exactness_grade(n);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Sample s = simulate(model, n, seed);
      std::vector<double> avg(static_cast<size_t>(grid.size()), 0.0);
      for (long t = 1; t <= n; ++t) {
        std::vector<double> J = pre_periodogram(s, Taper::none(), t, grid);
        for (size_t m = 0; m < avg.size(); ++m) avg[m] += J[m];
      }
      std::vector<double> pg = classical_periodogram(s, grid);
      for (size_t m = 0; m < avg.size(); ++m)
        worst = std::max(worst,
                         std::abs(avg[m] / static_cast<double>(n) - pg[m]));
    }
  }
  report(1, "time-average identity", worst < tol, worst, tol);
}

// ---------------------------------------------------------------------------
// 2. Frequency-domain and lag-domain evaluation of the spectral mean agree
//    across the functional menu.
void criterion_dual_evaluation() {
  const double tol = 1e-8;
  const long n = 48;
  FrequencyGrid grid = FrequencyGrid::exactness_grade(n);

  std::vector<SpectralFunctional> menu;
  menu.push_back(SpectralFunctional::frequency_only(FrequencyPart::one()));
  menu.push_back(SpectralFunctional(CoefficientCurve::polynomial({0.0, 1.0}),
                                    FrequencyPart::cosine(1)));
  menu.push_back(SpectralFunctional::frequency_only(FrequencyPart::cosine(3)));
  menu.push_back(
      SpectralFunctional::frequency_only(FrequencyPart::indicator(kPi / 2.0)));
  menu.push_back(SpectralFunctional(
      CoefficientCurve(CurveKind::PiecewiseConstant, {0.0, 0.5, 1.0},
                       {1.0, -1.0}),
      FrequencyPart::indicator(1.2)));
  SpectralFunctional multi(CoefficientCurve::constant(0.5),
                           FrequencyPart::one());
  multi.add_term(CoefficientCurve(CurveKind::PiecewiseLinear, {0.0, 1.0},
                                  {0.0, 2.0}),
                 FrequencyPart::indicator(2.0));
  menu.push_back(multi);

  std::vector<TvArmaModel> models{smooth_tvar1(),
                                  TvArmaModel({},
                                              {CoefficientCurve::polynomial(
                                                  {0.2, 0.4})},
                                              CoefficientCurve::constant(1.0),
                                              Innovation::Gaussian)};
  std::vector<Taper> tapers{Taper::none(), Taper::cosine()};

  double worst = 0.0;
  int sample_index = 0;
  for (const TvArmaModel& model : models) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      Sample s = simulate(model, n, seed);
      const Taper& taper = tapers[static_cast<size_t>(sample_index % 2)];
      ++sample_index;
      for (const SpectralFunctional& phi : menu) {
        double lag = spectral_mean_lag(s, taper, phi);
        double freq = spectral_mean_freq(s, taper, phi, grid);
        worst = std::max(worst, std::abs(lag - freq));
      }
    }
  }
  report(2, "dual evaluation", worst < tol, worst, tol);
}

// ---------------------------------------------------------------------------
// 3. The scaled deviations match the limit law: mean zero and the asymptotic
//    covariance, for gaussian and non-gaussian innovations.
void criterion_clt() {
  bool pass = true;
  double worst_margin = 0.0;
  for (Innovation innov :
       {Innovation::Gaussian, Innovation::StandardizedUniform}) {
    CltConfig cfg{
        TvArmaModel({CoefficientCurve::constant(-0.5)}, {},
                    CoefficientCurve::constant(1.0), innov)};
    cfg.phis = {
        SpectralFunctional::frequency_only(FrequencyPart::cosine(1)),
        SpectralFunctional::frequency_only(FrequencyPart::indicator(kPi / 2.0))};
    cfg.n = 512;
    cfg.reps = 2000;
    cfg.base_seed = innov == Innovation::Gaussian ? 101 : 202;
    McReport rep = mc_clt(cfg);
    pass = pass && rep.pass;
    for (const McCriterion& c : rep.criteria)
      if (c.threshold > 0.0)
        worst_margin = std::max(worst_margin, c.value / c.threshold);
  }
  report(3, "limit covariance", pass, worst_margin, 1.0);
}

// ---------------------------------------------------------------------------
// 4. The sup-over-u error of the local fit with b = n^{-1/5} decays at the
//    expected rate.
void criterion_rate() {
  RateConfig cfg{smooth_tvar1()};
  cfg.ns = {1000, 2000, 4000, 8000};
  cfg.reps = 100;
  cfg.base_seed = 7;
  cfg.slope_lo = -0.55;
  cfg.slope_hi = -0.25;
  McReport rep = mc_rate(cfg);
  double slope = 0.0;
  for (const McCriterion& c : rep.criteria)
    if (c.name.find("slope") != std::string::npos) slope = c.value;
  report(4, "uniform convergence rate", rep.pass, slope, cfg.slope_hi);
}

// ---------------------------------------------------------------------------
// 5. Global fit sanity: the white-noise minimizer is the mean square to
//    1e-8, and the analytic score matches finite differences to 1e-6 at ten
//    deterministic pseudo-random parameter points.
void criterion_whittle_exactness() {
  double worst_theta = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Sample s = simulate(smooth_tvar1(), 128, seed);
    double m2 = 0.0;
    for (long t = 1; t <= s.n; ++t) m2 += s[t] * s[t];
    m2 /= static_cast<double>(s.n);
    WhittleFitResult fit =
        fit_whittle(s, ParametricSpectralFamily::white_noise());
    worst_theta = std::max(worst_theta, std::abs(fit.opt.theta[0] - m2));
  }

  double worst_score = 0.0;
  Sample s = simulate(smooth_tvar1(), 96, 11);
  FrequencyGrid grid = FrequencyGrid::exactness_grade(s.n);
  ParametricSpectralFamily family = ParametricSpectralFamily::ar(2);
  CounterRng rng(2024, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd theta(3);
    theta << -0.6 + 1.2 * rng.uniform(static_cast<std::uint64_t>(3 * trial)),
        -0.3 + 0.6 * rng.uniform(static_cast<std::uint64_t>(3 * trial + 1)),
        0.5 + 2.0 * rng.uniform(static_cast<std::uint64_t>(3 * trial + 2));
    Eigen::VectorXd grad = whittle_score(s, family, theta, grid);
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd tp = theta, tm = theta;
      tp[j] += h;
      tm[j] -= h;
      double fd = (whittle_likelihood(s, family, tp, grid) -
                   whittle_likelihood(s, family, tm, grid)) /
                  (2.0 * h);
      worst_score = std::max(
          worst_score, std::abs(grad[j] - fd) / std::max(1.0, std::abs(fd)));
    }
  }
  bool pass = worst_theta < 1e-8 && worst_score < 1e-6;
  report(5, "global fit exactness", pass, std::max(worst_theta, worst_score),
         1e-6);
}

// ---------------------------------------------------------------------------
// 6. The optimized local fit coincides with the closed-form local AR solver
//    componentwise (smooth kernels).
void criterion_local_equivalence() {
  const double tol = 1e-4;
  struct Config {
    TvArmaModel model;
    int p;
    KernelKind kernel;
    long n;
    std::vector<double> us;
  };
  std::vector<Config> configs;
  configs.push_back({smooth_tvar1(), 1, KernelKind::Epanechnikov, 512,
                     {0.3, 0.5, 0.7}});
  configs.push_back({smooth_tvar1(), 1, KernelKind::Triangular, 1024,
                     {0.25, 0.5, 0.75}});
  configs.push_back({TvArmaModel({CoefficientCurve::constant(-0.3),
                                  CoefficientCurve::constant(0.1)},
                                 {}, CoefficientCurve::constant(1.0),
                                 Innovation::Gaussian),
                     2, KernelKind::Epanechnikov, 1024, {0.4, 0.6}});
  configs.push_back({TvArmaModel({CoefficientCurve::polynomial({-0.2, -0.3})},
                                 {}, CoefficientCurve::polynomial({0.8, 0.6}),
                                 Innovation::Gaussian),
                     1, KernelKind::Epanechnikov, 512, {0.35, 0.65}});
  configs.push_back({TvArmaModel({CoefficientCurve::constant(-0.5)}, {},
                                 CoefficientCurve::constant(1.0),
                                 Innovation::StandardizedUniform),
                     1, KernelKind::Triangular, 2048, {0.5}});

  double worst = 0.0;
  std::uint64_t seed = 31;
  for (const Config& c : configs) {
    Sample s = simulate(c.model, c.n, seed++);
    SmoothingKernel kernel(c.kernel);
    double b = std::pow(static_cast<double>(c.n), -0.2);
    LocalFitResult fit = fit_local_whittle(
        s, ParametricSpectralFamily::ar(c.p), kernel, b, c.us);
    for (size_t i = 0; i < c.us.size(); ++i) {
      LocalYuleWalkerResult yw =
          local_yule_walker(s, c.p, kernel, b, c.us[i]);
      for (int j = 0; j < c.p; ++j)
        worst = std::max(worst, std::abs(fit.theta[i][j] - yw.alpha[j]));
      worst = std::max(worst, std::abs(fit.theta[i][c.p] - yw.sigma2));
    }
  }
  report(6, "local fit equals closed form", worst < tol, worst, tol);
}

// ---------------------------------------------------------------------------
// 7. The scaled bias sqrt(n) |E F_n - F| stays bounded as n grows, including
//    a model whose coefficient curve jumps.
void criterion_bias() {
  bool pass = true;
  double worst = 0.0;
  {
    BiasConfig cfg{TvArmaModel({CoefficientCurve::constant(-0.5)}, {},
                               CoefficientCurve::constant(1.0),
                               Innovation::Gaussian)};
    cfg.phi = SpectralFunctional::frequency_only(FrequencyPart::cosine(1));
    cfg.ns = {128, 256, 512};
    McReport rep = mc_bias(cfg);
    pass = pass && rep.pass;
    for (const auto& row : rep.tables.at("bias").rows)
      worst = std::max(worst, std::abs(row.back()));
  }
  {
    BiasConfig cfg{tvar1_model(CoefficientCurve(
        CurveKind::PiecewiseConstant, {0.0, 0.5, 1.0}, {-0.2, -0.6}))};
    cfg.phi = SpectralFunctional::frequency_only(FrequencyPart::one());
    cfg.ns = {128, 256, 512};
    McReport rep = mc_bias(cfg);
    pass = pass && rep.pass;
    for (const auto& row : rep.tables.at("bias").rows)
      worst = std::max(worst, std::abs(row.back()));
  }
  report(7, "scaled bias bounded", pass, worst, 0.0);
}

// ---------------------------------------------------------------------------
// 8. Weighted covariance decay: sup_u |c(u,k)| ell(k) shows no growth in k
//    (the large-lag half never exceeds the small-lag half).
void criterion_covariance_decay() {
  std::vector<TvArmaModel> models{
      TvArmaModel({CoefficientCurve::constant(-0.6)}, {},
                  CoefficientCurve::constant(1.0), Innovation::Gaussian),
      smooth_tvar1(),
      TvArmaModel({CoefficientCurve::polynomial({-0.3, -0.2})},
                  {CoefficientCurve::constant(0.4)},
                  CoefficientCurve::constant(1.0), Innovation::Gaussian)};
  bool pass = true;
  double worst_ratio = 0.0;
  for (const TvArmaModel& model : models) {
    std::vector<double> weighted;
    for (long k = 1; k <= 200; ++k) {
      double sup = 0.0;
      for (int i = 0; i <= 40; ++i)
        sup = std::max(sup, std::abs(model.tv_covariance(i / 40.0, k)));
      weighted.push_back(sup * decay_weight(k));
    }
    double first = 0.0, second = 0.0;
    for (size_t i = 0; i < weighted.size(); ++i)
      (i < 100 ? first : second) = std::max(i < 100 ? first : second,
                                            weighted[i]);
    pass = pass && second <= first && std::isfinite(first);
    if (first > 0.0) worst_ratio = std::max(worst_ratio, second / first);
  }
  report(8, "weighted covariance decay", pass, worst_ratio, 1.0);
}

// ---------------------------------------------------------------------------
// 9. Sample maxima stay under the 2 log n envelope: the exceedance frequency
//    times n is bounded across n.
void criterion_maxbound() {
  MaxboundConfig cfg{smooth_tvar1()};
  cfg.ns = {500, 1000, 2000};
  cfg.reps = 5000;
  cfg.base_seed = 17;
  McReport rep = mc_maxbound(cfg);
  double worst = 0.0;
  for (const auto& row : rep.tables.at("exceedance").rows)
    worst = std::max(worst, row.back());
  report(9, "max exceedance bounded", rep.pass, worst, 0.0);
}

// ---------------------------------------------------------------------------
// 10. Byte-for-byte reproducibility through the command line, across worker
//     counts, via the run manifest.
void criterion_reproducibility(const std::string& bin) {
  fs::path root = fs::temp_directory_path() / "locspec_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  auto write_file = [](const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };
  auto run = [](const std::string& cmd) {
    return WEXITSTATUS(std::system((cmd + " >/dev/null 2>&1").c_str()));
  };

  struct Job {
    std::string name;
    std::string command;
    std::string config;
  };
  std::vector<Job> jobs{
      {"simulate", "simulate",
       R"({"model": {"alpha": [{"kind": "polynomial",
           "coefficients": [-0.3, -0.4]}]}, "n": 512, "seed": 9})"},
      {"mean", "spectral mean",
       R"({"model": {"alpha": [-0.5]}, "n": 256, "seed": 4,
           "functional": {"psi": {"kind": "indicator", "mu": 1.5}},
           "check_dual": true})"},
      {"yw", "fit yule-walker",
       R"({"model": {"alpha": [{"kind": "polynomial",
           "coefficients": [-0.3, -0.4]}]}, "n": 1024, "seed": 6, "p": 1,
           "kernel": "epanechnikov", "bandwidth": "auto",
           "u_grid": {"points": 9}})"},
      {"clt", "verify clt",
       R"({"model": {"alpha": [-0.5]}, "n": 128, "reps": 200, "base_seed": 3,
           "functionals": [{"psi": "one"},
                           {"psi": {"kind": "cosine", "k": 1}}]})"}};

  bool pass = true;
  int compared = 0;
  for (const Job& job : jobs) {
    fs::path cfg_path = root / (job.name + ".json");
    write_file(cfg_path, job.config);
    fs::path d1 = root / (job.name + "_a");
    fs::path d2 = root / (job.name + "_b");
    int rc1 = run(bin + " " + job.command + " --config " + cfg_path.string() +
                  " --out-dir " + d1.string() + " --threads 1");
    std::string manifest;
    for (const auto& entry : fs::directory_iterator(d1))
      if (entry.path().filename().string().find("_manifest.json") !=
          std::string::npos)
        manifest = entry.path().string();
    int rc2 = run(bin + " rerun --manifest " + manifest + " --out-dir " +
                  d2.string() + " --threads 4");
    if (rc1 != 0 || rc2 != 0 || manifest.empty()) {
      pass = false;
      continue;
    }
    RunManifest m = load_manifest(manifest);
    for (const std::string& out : m.outputs) {
      fs::path rel = fs::path(out).filename();
      ++compared;
      if (slurp(d1 / rel) != slurp(d2 / rel) || slurp(d1 / rel).empty())
        pass = false;
    }
  }
  report(10, "cross-thread reproducibility", pass && compared > 0,
         static_cast<double>(compared), 1.0);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <binary>\n";
    return 2;
  }
  criterion_identity();
  criterion_dual_evaluation();
  criterion_clt();
  criterion_rate();
  criterion_whittle_exactness();
  criterion_local_equivalence();
  criterion_bias();
  criterion_covariance_decay();
  criterion_maxbound();
  criterion_reproducibility(argv[1]);
  std::cout << (g_failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: FAILURES\n");
  return g_failures == 0 ? 0 : 1;
}
