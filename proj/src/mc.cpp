#include "locspec/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "locspec/rng.hpp"

namespace locspec {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs body(rep) for rep = 0..reps-1 on a worker pool. Each body call writes
// only to its own slot, so the result is independent of scheduling.
template <class Body>
void run_reps(int reps, int threads, const Body& body) {
  if (threads <= 1) {
    for (int r = 0; r < reps; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        int r = next.fetch_add(1);
        if (r >= reps) return;
        body(r);
      }
    });
  for (auto& t : pool) t.join();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void require_reps(int reps) {
  if (reps < 2) throw std::invalid_argument("mc: replication count >= 2");
}

void require_ascending(const std::vector<long>& ns) {
  if (ns.empty()) throw std::invalid_argument("mc: empty n list");
  for (size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1])
      throw std::invalid_argument("mc: n list must be ascending");
}

void finalize(McReport& report) {
  report.pass = true;
  for (const auto& c : report.criteria) report.pass = report.pass && c.pass;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LOCSPEC_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

double loglog_slope(const std::vector<long>& ns,
                    const std::vector<double>& values) {
  if (ns.size() != values.size() || ns.size() < 2)
    throw std::invalid_argument("loglog_slope: need >= 2 points");
  double mx = 0.0, my = 0.0;
  const auto m = static_cast<double>(ns.size());
  for (size_t i = 0; i < ns.size(); ++i) {
    mx += std::log(static_cast<double>(ns[i]));
    my += std::log(values[i]);
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < ns.size(); ++i) {
    double dx = std::log(static_cast<double>(ns[i])) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  return sxy / sxx;
}

McReport mc_clt(const CltConfig& config) {
  Stopwatch clock;
  require_reps(config.reps);
  if (config.phis.empty()) throw std::invalid_argument("mc_clt: no functionals");
  if (config.se_multiplier <= 0.0)
    throw std::invalid_argument("mc_clt: se multiplier > 0");
  config.model.require_valid();

  TvArmaModel target_model = config.model;
  if (std::isfinite(config.kappa4_override))
    target_model.set_kappa4(config.kappa4_override);

  const auto J = static_cast<int>(config.phis.size());
  std::vector<double> theo(static_cast<size_t>(J));
  for (int j = 0; j < J; ++j)
    theo[static_cast<size_t>(j)] =
        theoretical_functional(config.model, config.taper, config.phis[j]);

  Eigen::MatrixXd target(J, J);
  for (int j = 0; j < J; ++j)
    for (int k = j; k < J; ++k) {
      target(j, k) = clt_covariance(config.phis[j], config.phis[k],
                                    target_model, config.taper);
      target(k, j) = target(j, k);
    }

  const int R = config.reps;
  std::vector<std::vector<double>> draws(
      static_cast<size_t>(J), std::vector<double>(static_cast<size_t>(R)));
  run_reps(R, resolve_threads(config.threads), [&](int r) {
    Sample s = simulate(config.model, config.n,
                        config.base_seed + static_cast<std::uint64_t>(r));
    for (int j = 0; j < J; ++j) {
      double fn = spectral_mean_lag(s, config.taper, config.phis[j]);
      draws[static_cast<size_t>(j)][static_cast<size_t>(r)] =
          std::sqrt(static_cast<double>(config.n)) *
          (fn - theo[static_cast<size_t>(j)]);
    }
  });

  Eigen::VectorXd mean(J);
  for (int j = 0; j < J; ++j)
    mean[j] = pairwise_sum(draws[static_cast<size_t>(j)]) / R;
  Eigen::MatrixXd cov(J, J);
  for (int j = 0; j < J; ++j)
    for (int k = j; k < J; ++k) {
      std::vector<double> prods(static_cast<size_t>(R));
      for (int r = 0; r < R; ++r)
        prods[static_cast<size_t>(r)] =
            (draws[static_cast<size_t>(j)][static_cast<size_t>(r)] - mean[j]) *
            (draws[static_cast<size_t>(k)][static_cast<size_t>(r)] - mean[k]);
      cov(j, k) = pairwise_sum(prods) / (R - 1);
      cov(k, j) = cov(j, k);
    }

  McReport report;
  report.experiment = "clt";
  McTable mean_table{{"index", "mean", "se", "target"}, {}};
  for (int j = 0; j < J; ++j) {
    double se = std::sqrt(cov(j, j) / R);
    McCriterion c;
    c.name = "mean[" + std::to_string(j) + "]";
    c.value = mean[j];
    c.threshold = config.se_multiplier * se;
    c.pass = std::abs(mean[j]) <= c.threshold;
    report.criteria.push_back(c);
    mean_table.rows.push_back({static_cast<double>(j), mean[j], se, 0.0});
  }
  McTable cov_table{{"j", "k", "empirical", "target", "se"}, {}};
  for (int j = 0; j < J; ++j)
    for (int k = j; k < J; ++k) {
      double se =
          std::sqrt((cov(j, j) * cov(k, k) + cov(j, k) * cov(j, k)) / R);
      McCriterion c;
      c.name = "cov[" + std::to_string(j) + "][" + std::to_string(k) + "]";
      c.value = cov(j, k) - target(j, k);
      c.threshold = config.se_multiplier * se;
      c.pass = std::abs(c.value) <= c.threshold;
      report.criteria.push_back(c);
      cov_table.rows.push_back({static_cast<double>(j), static_cast<double>(k),
                                cov(j, k), target(j, k), se});
    }

  // Normality diagnostic on the first coordinate (reported, not asserted).
  {
    const auto& col = draws[0];
    double sd = std::sqrt(cov(0, 0));
    std::vector<double> c3(static_cast<size_t>(R)), c4(static_cast<size_t>(R));
    for (int r = 0; r < R; ++r) {
      double z = (col[static_cast<size_t>(r)] - mean[0]) / sd;
      c3[static_cast<size_t>(r)] = z * z * z;
      c4[static_cast<size_t>(r)] = z * z * z * z;
    }
    double skew = pairwise_sum(c3) / R;
    double exkurt = pairwise_sum(c4) / R - 3.0;
    report.tables["normality"] =
        McTable{{"skewness", "excess_kurtosis"}, {{skew, exkurt}}};
  }
  report.tables["mean"] = std::move(mean_table);
  report.tables["covariance"] = std::move(cov_table);
  finalize(report);
  report.wall_seconds = clock.seconds();
  return report;
}

McReport mc_rate(const RateConfig& config) {
  Stopwatch clock;
  require_reps(config.reps);
  require_ascending(config.ns);
  config.model.require_valid();
  if (config.model.q() != 0)
    throw std::invalid_argument("mc_rate: AR-type truth required");
  const int p = config.model.p();
  SmoothingKernel kernel(config.kernel);

  std::vector<double> medians;
  McTable err_table{{"n", "bandwidth", "median_sup_error"}, {}};
  std::vector<std::vector<double>> all_errors;
  for (long n : config.ns) {
    double b = std::pow(static_cast<double>(n), -0.2);
    std::vector<double> u_grid(static_cast<size_t>(config.u_points));
    for (int i = 0; i < config.u_points; ++i)
      u_grid[static_cast<size_t>(i)] =
          0.5 * b + (1.0 - b) * i / (config.u_points - 1);

    std::vector<double> errors(static_cast<size_t>(config.reps));
    run_reps(config.reps, resolve_threads(config.threads), [&](int r) {
      Sample s = simulate(config.model, n,
                          config.base_seed + static_cast<std::uint64_t>(r));
      double sup = 0.0;
      for (double u : u_grid) {
        LocalYuleWalkerResult fit = local_yule_walker(s, p, kernel, b, u);
        double sq = 0.0;
        for (int j = 0; j < p; ++j) {
          double d = fit.alpha[j] - config.model.alpha()[static_cast<size_t>(j)](u);
          sq += d * d;
        }
        double sig = config.model.sigma()(u);
        double ds = fit.sigma2 - sig * sig;
        sq += ds * ds;
        sup = std::max(sup, std::sqrt(sq));
      }
      errors[static_cast<size_t>(r)] = sup;
    });
    double med = median_of(errors);
    medians.push_back(med);
    all_errors.push_back(std::move(errors));
    err_table.rows.push_back({static_cast<double>(n), b, med});
  }

  double slope = loglog_slope(config.ns, medians);

  // Percentile bootstrap over replications, resampled per n.
  std::vector<double> boot_slopes(static_cast<size_t>(config.bootstrap));
  for (int bs = 0; bs < config.bootstrap; ++bs) {
    CounterRng rng(config.base_seed ^ 0xb00757a9ULL,
                   static_cast<std::uint64_t>(bs));
    std::uint64_t ctr = 0;
    std::vector<double> boot_medians;
    for (size_t ni = 0; ni < config.ns.size(); ++ni) {
      const auto& errs = all_errors[ni];
      std::vector<double> resample(errs.size());
      for (size_t r = 0; r < errs.size(); ++r) {
        auto idx = static_cast<size_t>(rng.uniform(ctr++) *
                                       static_cast<double>(errs.size()));
        resample[r] = errs[std::min(idx, errs.size() - 1)];
      }
      boot_medians.push_back(median_of(resample));
    }
    boot_slopes[static_cast<size_t>(bs)] = loglog_slope(config.ns, boot_medians);
  }
  std::sort(boot_slopes.begin(), boot_slopes.end());
  auto quantile = [&](double q) {
    auto idx = static_cast<size_t>(q * (boot_slopes.size() - 1));
    return boot_slopes[idx];
  };
  double ci_lo = quantile(0.025), ci_hi = quantile(0.975);

  McReport report;
  report.experiment = "rate";
  McCriterion c;
  c.name = "slope";
  c.value = slope;
  c.threshold = config.slope_hi;
  c.pass = slope >= config.slope_lo && slope <= config.slope_hi;
  c.detail = "window [" + std::to_string(config.slope_lo) + ", " +
             std::to_string(config.slope_hi) + "], bootstrap CI [" +
             std::to_string(ci_lo) + ", " + std::to_string(ci_hi) + "]";
  report.criteria.push_back(c);
  report.tables["errors"] = std::move(err_table);
  report.tables["slope"] =
      McTable{{"slope", "ci_lo", "ci_hi"}, {{slope, ci_lo, ci_hi}}};
  finalize(report);
  report.wall_seconds = clock.seconds();
  return report;
}

McReport mc_bias(const BiasConfig& config) {
  Stopwatch clock;
  require_ascending(config.ns);
  if (config.slack_ratio < 1.0)
    throw std::invalid_argument("mc_bias: slack ratio >= 1");
  config.model.require_valid();

  double f_limit = theoretical_functional(config.model, config.taper, config.phi);
  std::vector<double> devs;
  McTable table{{"n", "expected_mean", "limit", "scaled_gap"}, {}};
  for (long n : config.ns) {
    double efn =
        expected_spectral_mean(config.model, config.taper, config.phi, n);
    double dev = std::sqrt(static_cast<double>(n)) * std::abs(efn - f_limit);
    devs.push_back(dev);
    table.rows.push_back({static_cast<double>(n), efn, f_limit, dev});
  }

  McReport report;
  report.experiment = "bias";
  for (size_t i = 1; i < devs.size(); ++i) {
    McCriterion c;
    c.name = "scaled_gap[" + std::to_string(config.ns[i]) + "]";
    c.value = devs[i];
    c.threshold = config.slack_ratio * devs[i - 1] + 1e-10;
    c.pass = devs[i] <= c.threshold;
    report.criteria.push_back(c);
  }
  report.tables["bias"] = std::move(table);
  finalize(report);
  report.wall_seconds = clock.seconds();
  return report;
}

McReport mc_maxbound(const MaxboundConfig& config) {
  Stopwatch clock;
  require_reps(config.reps);
  require_ascending(config.ns);
  config.model.require_valid();

  const int R = config.reps;
  std::vector<double> scaled;  // exceedance frequency times n
  std::vector<double> freqs;
  McTable table{{"n", "threshold", "frequency", "frequency_times_n"}, {}};
  for (long n : config.ns) {
    double threshold = 2.0 * std::log(static_cast<double>(n));
    std::vector<double> exceed(static_cast<size_t>(R));
    run_reps(R, resolve_threads(config.threads), [&](int r) {
      Sample s = simulate(config.model, n,
                          config.base_seed + static_cast<std::uint64_t>(r));
      double mx = 0.0;
      for (double v : s.values) mx = std::max(mx, std::abs(v));
      exceed[static_cast<size_t>(r)] = mx > threshold ? 1.0 : 0.0;
    });
    double freq = pairwise_sum(exceed) / R;
    freqs.push_back(freq);
    scaled.push_back(freq * static_cast<double>(n));
    table.rows.push_back(
        {static_cast<double>(n), threshold, freq, freq * static_cast<double>(n)});
  }

  McReport report;
  report.experiment = "maxbound";
  for (size_t i = 1; i < scaled.size(); ++i) {
    double f = std::max(freqs[i], 1.0 / R);
    double mc_slack = 3.0 * static_cast<double>(config.ns[i]) *
                      std::sqrt(f * (1.0 - f) / R);
    McCriterion c;
    c.name = "scaled_frequency[" + std::to_string(config.ns[i]) + "]";
    c.value = scaled[i];
    c.threshold = config.slack_ratio * scaled[i - 1] + mc_slack;
    c.pass = scaled[i] <= c.threshold;
    report.criteria.push_back(c);
  }
  report.tables["exceedance"] = std::move(table);
  finalize(report);
  report.wall_seconds = clock.seconds();
  return report;
}

McReport mc_tail(const TailConfig& config) {
  Stopwatch clock;
  require_reps(config.reps);
  config.model.require_valid();

  double center =
      expected_spectral_mean(config.model, config.taper, config.phi, config.n);
  const int R = config.reps;
  std::vector<double> draws(static_cast<size_t>(R));
  run_reps(R, resolve_threads(config.threads), [&](int r) {
    Sample s = simulate(config.model, config.n,
                        config.base_seed + static_cast<std::uint64_t>(r));
    double fn = spectral_mean_lag(s, config.taper, config.phi);
    draws[static_cast<size_t>(r)] =
        std::sqrt(static_cast<double>(config.n)) * (fn - center);
  });

  double mean = pairwise_sum(draws) / R;
  std::vector<double> sq(static_cast<size_t>(R));
  for (int r = 0; r < R; ++r) {
    double d = draws[static_cast<size_t>(r)] - mean;
    sq[static_cast<size_t>(r)] = d * d;
  }
  double sd = std::sqrt(pairwise_sum(sq) / (R - 1));

  const int points = 20;
  McTable table{{"eta", "probability", "count"}, {}};
  std::vector<double> etas, probs;
  long count4sd = 0;
  for (int j = 1; j <= points; ++j) {
    double eta = 0.25 * j * sd;
    long count = 0;
    for (double v : draws)
      if (std::abs(v) >= eta) ++count;
    etas.push_back(eta);
    probs.push_back(static_cast<double>(count) / R);
    if (j == 16) count4sd = count;
    table.rows.push_back(
        {eta, static_cast<double>(count) / R, static_cast<double>(count)});
  }

  McReport report;
  report.experiment = "tail";
  {
    McCriterion c;
    c.name = "monotone";
    double worst = 0.0;
    for (size_t i = 1; i < probs.size(); ++i)
      worst = std::max(worst, probs[i] - probs[i - 1]);
    c.value = worst;
    c.threshold = 0.0;
    c.pass = worst <= 0.0;
    report.criteria.push_back(c);
  }
  {
    McCriterion c;
    c.name = "exceedance_at_4sd";
    c.value = static_cast<double>(count4sd) / R;
    c.threshold = 1e-3;
    c.pass = c.value < c.threshold;
    report.criteria.push_back(c);
  }
  {
    // Sub-exponential shape in sqrt(eta): fit log p = a - c sqrt(eta) on the
    // first half of the resolved points (count >= 20) and require the rest to
    // stay below the line up to a factor-2 margin.
    std::vector<double> xs, ys;
    for (size_t i = 0; i < probs.size(); ++i)
      if (probs[i] * R >= 20.0) {
        xs.push_back(std::sqrt(etas[i]));
        ys.push_back(std::log(probs[i]));
      }
    McCriterion c;
    c.name = "subexponential_shape";
    if (xs.size() < 4) {
      c.pass = true;
      c.detail = "too few resolved points; skipped";
    } else {
      size_t half = xs.size() / 2;
      double mx = 0.0, my = 0.0;
      for (size_t i = 0; i < half; ++i) {
        mx += xs[i];
        my += ys[i];
      }
      mx /= static_cast<double>(half);
      my /= static_cast<double>(half);
      double sxx = 0.0, sxy = 0.0;
      for (size_t i = 0; i < half; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
      }
      double slope = sxy / sxx;
      double intercept = my - slope * mx;
      double worst = -1e300;
      for (size_t i = half; i < xs.size(); ++i)
        worst = std::max(worst, ys[i] - (intercept + slope * xs[i]));
      c.value = worst;
      c.threshold = std::log(2.0);
      c.pass = slope < 0.0 && worst <= c.threshold;
      c.detail = "fitted decay slope " + std::to_string(slope);
    }
    report.criteria.push_back(c);
  }
  report.tables["exceedance"] = std::move(table);
  report.tables["summary"] = McTable{{"mean", "sd"}, {{mean, sd}}};
  finalize(report);
  report.wall_seconds = clock.seconds();
  return report;
}

}  // namespace locspec
