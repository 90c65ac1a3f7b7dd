#include "locspec/local.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "locspec/preperiodogram.hpp"

namespace locspec {

namespace {

constexpr double kPi = M_PI;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCondLimit = 1e10;

struct Window {
  long lo, hi;  // t range with nonzero kernel weight, clipped to 1..n
};

Window window_of(long n, double b, double u) {
  auto lo = static_cast<long>(std::ceil((u - 0.5 * b) * n - 1e-9));
  auto hi = static_cast<long>(std::floor((u + 0.5 * b) * n + 1e-9));
  return {std::max<long>(1, lo), std::min<long>(n, hi)};
}

void check_band(double b, double u) {
  if (!(b > 0.0 && b <= 1.0))
    throw std::invalid_argument("local: bandwidth must be in (0, 1]");
  if (u < 0.5 * b - 1e-12 || u > 1.0 - 0.5 * b + 1e-12)
    throw std::invalid_argument("local: u outside [b/2, 1 - b/2]");
}

bool positive_on_grid(const ParametricSpectralFamily& family,
                      const Eigen::VectorXd& theta, const FrequencyGrid& grid) {
  for (double l : grid.nodes) {
    double v = family.f(theta, l);
    if (!(v > 1e-300) || !std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

double local_covariance(const Sample& sample, const SmoothingKernel& kernel,
                        double b, double u, long k) {
  check_band(b, u);
  const long n = sample.n;
  const long kk = std::abs(k);
  Window w = window_of(n, b, u);
  double acc = 0.0;
  for (long t = w.lo; t <= w.hi; ++t) {
    double weight = kernel((u - static_cast<double>(t) / n) / b);
    if (weight == 0.0) continue;
    long sp = lag_index_plus(t, kk);
    long sm = lag_index_minus(t, kk);
    if (sp < 1 || sp > n || sm < 1 || sm > n) continue;
    acc += weight * sample[sp] * sample[sm];
  }
  return acc / (static_cast<double>(n) * b);
}

double local_kernel_mass(long n, const SmoothingKernel& kernel, double b,
                         double u) {
  Window w = window_of(n, b, u);
  double acc = 0.0;
  for (long t = w.lo; t <= w.hi; ++t)
    acc += kernel((u - static_cast<double>(t) / n) / b);
  return acc / (static_cast<double>(n) * b);
}

LocalYuleWalkerResult local_yule_walker(const Sample& sample, int p,
                                        const SmoothingKernel& kernel,
                                        double b, double u) {
  if (p < 1) throw std::invalid_argument("local_yule_walker: p >= 1");
  check_band(b, u);
  if (static_cast<double>(sample.n) * b < 2.0 * p + 2.0)
    throw std::invalid_argument(
        "local_yule_walker: window too short (nb < 2p + 2)");

  std::vector<double> c(static_cast<size_t>(p) + 1);
  for (int k = 0; k <= p; ++k)
    c[static_cast<size_t>(k)] = local_covariance(sample, kernel, b, u, k);

  Eigen::MatrixXd sigma(p, p);
  Eigen::VectorXd rhs(p);
  for (int i = 0; i < p; ++i) {
    rhs[i] = c[static_cast<size_t>(i) + 1];
    for (int j = 0; j < p; ++j)
      sigma(i, j) = c[static_cast<size_t>(std::abs(i - j))];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      sigma, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(p - 1);
  double cond = smin > 0.0 ? smax / smin : kInf;
  if (!std::isfinite(cond) || cond > kCondLimit)
    throw std::runtime_error(
        "local_yule_walker: ill-conditioned lag matrix, condition estimate " +
        std::to_string(cond));

  LocalYuleWalkerResult res;
  res.alpha = -svd.solve(rhs);
  res.condition = cond;
  res.sigma2 = c[0];
  for (int k = 1; k <= p; ++k)
    res.sigma2 += res.alpha[k - 1] * c[static_cast<size_t>(k)];
  res.negative_variance = res.sigma2 < 0.0;
  return res;
}

LocalWhittleData make_local_whittle_data(const Sample& sample,
                                         const SmoothingKernel& kernel,
                                         double b, double u,
                                         const FrequencyGrid& grid) {
  check_band(b, u);
  const long n = sample.n;
  LocalWhittleData data;
  data.u = u;
  data.kernel_mass = local_kernel_mass(n, kernel, b, u);
  data.lag_covs.resize(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k)
    data.lag_covs[static_cast<size_t>(k)] =
        local_covariance(sample, kernel, b, u, k);
  long k_top = n - 1;
  while (k_top > 0 && data.lag_covs[static_cast<size_t>(k_top)] == 0.0)
    --k_top;

  data.transform.assign(static_cast<size_t>(grid.size()), 0.0);
  for (int m = 0; m < grid.size(); ++m) {
    double l = grid.nodes[m];
    double acc = data.lag_covs[0];
    for (long k = 1; k <= k_top; ++k)
      acc += 2.0 * data.lag_covs[static_cast<size_t>(k)] *
             std::cos(l * static_cast<double>(k));
    data.transform[static_cast<size_t>(m)] = acc / (2.0 * kPi);
  }
  return data;
}

double local_whittle_likelihood_data(const LocalWhittleData& data,
                                     const ParametricSpectralFamily& family,
                                     const Eigen::VectorXd& theta,
                                     const FrequencyGrid& grid) {
  if (theta.size() != family.dim())
    throw std::invalid_argument("local_whittle: theta dimension mismatch");
  if (!positive_on_grid(family, theta, grid)) return kInf;
  double log_part = 0.0, data_part = 0.0;
  for (int m = 0; m < grid.size(); ++m) {
    double f = family.f(theta, grid.nodes[m]);
    log_part += grid.weights[m] * std::log(4.0 * kPi * kPi * f);
    data_part +=
        grid.weights[m] * data.transform[static_cast<size_t>(m)] / f;
  }
  return (data.kernel_mass * log_part + data_part) / (4.0 * kPi);
}

Eigen::VectorXd local_whittle_score_data(const LocalWhittleData& data,
                                         const ParametricSpectralFamily& family,
                                         const Eigen::VectorXd& theta,
                                         const FrequencyGrid& grid) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(family.dim());
  for (int m = 0; m < grid.size(); ++m) {
    double l = grid.nodes[m];
    g += grid.weights[m] *
         (data.kernel_mass * family.grad_log_f(theta, l) +
          data.transform[static_cast<size_t>(m)] * family.grad_inv_f(theta, l));
  }
  return g / (4.0 * kPi);
}

double local_whittle_likelihood(const Sample& sample,
                                const ParametricSpectralFamily& family,
                                const SmoothingKernel& kernel, double b,
                                double u, const Eigen::VectorXd& theta,
                                const FrequencyGrid& grid) {
  return local_whittle_likelihood_data(
      make_local_whittle_data(sample, kernel, b, u, grid), family, theta,
      grid);
}

LocalFitResult fit_local_whittle(const Sample& sample,
                                 const ParametricSpectralFamily& family,
                                 const SmoothingKernel& kernel, double b,
                                 const std::vector<double>& u_grid,
                                 const OptimizerConfig& cfg, int grid_points) {
  if (sample.n < 1)
    throw std::invalid_argument("fit_local_whittle: empty sample");
  for (double u : u_grid) check_band(b, u);
  FrequencyGrid grid =
      grid_points > 0 ? FrequencyGrid(grid_points)
                      : FrequencyGrid::exactness_grade(sample.n);

  LocalFitResult res;
  res.bandwidth = b;
  res.kernel_name = kernel.name();
  res.family_name = family.name();

  const int d = family.dim();
  const ParameterBox& box = family.box();
  Eigen::VectorXd warm;
  for (double u : u_grid) {
    LocalWhittleData data = make_local_whittle_data(sample, kernel, b, u, grid);

    BoxObjective obj = [&](const Eigen::VectorXd& theta, Eigen::VectorXd* g) {
      double v = local_whittle_likelihood_data(data, family, theta, grid);
      if (g) {
        if (std::isfinite(v))
          *g = local_whittle_score_data(data, family, theta, grid);
        else
          g->setZero(d);
      }
      return v;
    };

    std::vector<Eigen::VectorXd> starts;
    if (warm.size() == d) starts.push_back(warm);
    if (family.tag() == FamilyTag::Ar) {
      try {
        LocalYuleWalkerResult yw =
            local_yule_walker(sample, family.p(), kernel, b, u);
        if (!yw.negative_variance) {
          Eigen::VectorXd s(d);
          s.head(family.p()) = yw.alpha;
          s[d - 1] = yw.sigma2;
          starts.push_back(box.project(s));
        }
      } catch (const std::exception&) {
        // fall through to the generic starts
      }
    }
    Eigen::VectorXd moment = Eigen::VectorXd::Zero(d);
    double s2 = data.kernel_mass > 0.0 ? data.lag_covs[0] / data.kernel_mass
                                       : data.lag_covs[0];
    moment[d - 1] = s2;
    starts.push_back(box.project(moment));

    bool failed = false;
    OptimizerResult opt;
    try {
      opt = minimize_box_multistart(obj, box, starts, cfg);
    } catch (const std::exception&) {
      failed = true;
      opt.theta = starts.back();
      opt.value = kInf;
    }
    res.u.push_back(u);
    res.theta.push_back(opt.theta);
    res.grad_norm.push_back(opt.projected_grad_norm);
    res.iterations.push_back(opt.iterations);
    res.converged.push_back(opt.converged ? 1 : 0);
    res.at_boundary.push_back(opt.at_boundary ? 1 : 0);
    res.failed.push_back(failed ? 1 : 0);
    if (!failed) warm = opt.theta;
  }
  return res;
}

}  // namespace locspec
