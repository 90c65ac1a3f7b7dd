#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "locspec/kernel.hpp"
#include "locspec/local.hpp"
#include "locspec/model.hpp"
#include "locspec/spectral_mean.hpp"

namespace locspec {

// One pass/fail line of a report.
struct McCriterion {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

// Rectangular numeric table for CSV emission (one row per n or per eta).
struct McTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct McReport {
  std::string experiment;
  bool pass = false;
  std::vector<McCriterion> criteria;
  std::map<std::string, McTable> tables;
  double wall_seconds = 0.0;
};

// Worker count: explicit > 0 wins, otherwise LOCSPEC_THREADS, otherwise
// hardware concurrency. Results never depend on the answer.
int resolve_threads(int requested);

// Least-squares slope of log(value) on log(n).
double loglog_slope(const std::vector<long>& ns,
                    const std::vector<double>& values);

struct CltConfig {
  TvArmaModel model;
  Taper taper = Taper::none();
  std::vector<SpectralFunctional> phis;
  long n = 512;
  int reps = 2000;
  std::uint64_t base_seed = 1;
  double se_multiplier = 3.0;
  int threads = 0;
  // Override for negative-control runs; NaN means use the model's value.
  double kappa4_override = std::numeric_limits<double>::quiet_NaN();
};

// Scaled deviations of the spectral means over seeded replications: empirical
// mean vs 0, empirical covariance vs the limit covariance, plus skewness and
// kurtosis of the first coordinate as a normality diagnostic.
McReport mc_clt(const CltConfig& config);

struct RateConfig {
  TvArmaModel model;  // AR-type truth; closed-form local solver path
  KernelKind kernel = KernelKind::Epanechnikov;
  std::vector<long> ns;
  int reps = 100;
  std::uint64_t base_seed = 1;
  int u_points = 25;
  double slope_lo = -0.55;
  double slope_hi = -0.25;
  int bootstrap = 500;
  int threads = 0;
};

// Sup-over-u estimation error of the local AR fit with b = n^{-1/5};
// log-log regression of the median error on n with a bootstrap CI on the
// slope.
McReport mc_rate(const RateConfig& config);

struct BiasConfig {
  TvArmaModel model;
  Taper taper = Taper::none();
  SpectralFunctional phi;
  std::vector<long> ns;
  double slack_ratio = 1.1;
};

// Deterministic: sqrt(n) |E F_n - F| from the exact finite-n expectation,
// asserted non-increasing across the n list within the slack ratio.
McReport mc_bias(const BiasConfig& config);

struct MaxboundConfig {
  TvArmaModel model;
  std::vector<long> ns;
  int reps = 5000;
  std::uint64_t base_seed = 1;
  double slack_ratio = 1.1;
  int threads = 0;
};

// Exceedance frequency of max_t |X_t| > 2 log n; frequency times n must stay
// bounded across the n list (consecutive-ratio check with MC slack).
McReport mc_maxbound(const MaxboundConfig& config);

struct TailConfig {
  TvArmaModel model;
  Taper taper = Taper::none();
  SpectralFunctional phi;
  long n = 512;
  int reps = 10000;
  std::uint64_t base_seed = 1;
  int threads = 0;
};

// Exceedance curve of the centered scaled deviation (centered at the exact
// expectation): monotone in eta, sub-exponential shape in sqrt(eta)
// (one-sided), and the 4-sigma exceedance below 1e-3.
McReport mc_tail(const TailConfig& config);

}  // namespace locspec
