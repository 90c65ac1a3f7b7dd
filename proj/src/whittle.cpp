#include "locspec/whittle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "locspec/preperiodogram.hpp"

namespace locspec {

namespace {

constexpr double kPi = M_PI;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGl = 16;
constexpr double kGlX[kGl] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGlW[kGl] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class Fn>
double gl_panels(double lo, double hi, int panels, Fn&& fn) {
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = lo + (hi - lo) * p / panels;
    double b = lo + (hi - lo) * (p + 1) / panels;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < kGl; ++i) acc += kGlW[i] * fn(mid + half * kGlX[i]);
    total += half * acc;
  }
  return total;
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

double whittle_likelihood_pg(const std::vector<double>& periodogram,
                             const ParametricSpectralFamily& family,
                             const Eigen::VectorXd& theta,
                             const FrequencyGrid& grid) {
  if (theta.size() != family.dim())
    throw std::invalid_argument("whittle: theta dimension mismatch");
  if (static_cast<int>(periodogram.size()) != grid.size())
    throw std::invalid_argument("whittle: periodogram/grid size mismatch");
  if (!positive_on_grid(family, theta, grid)) return kInf;
  double acc = 0.0;
  for (int m = 0; m < grid.size(); ++m) {
    double f = family.f(theta, grid.nodes[m]);
    acc += grid.weights[m] *
           (std::log(4.0 * kPi * kPi * f) + periodogram[m] / f);
  }
  return acc / (4.0 * kPi);
}

double whittle_likelihood(const Sample& sample,
                          const ParametricSpectralFamily& family,
                          const Eigen::VectorXd& theta,
                          const FrequencyGrid& grid) {
  return whittle_likelihood_pg(classical_periodogram(sample, grid), family,
                               theta, grid);
}

Eigen::VectorXd whittle_score_pg(const std::vector<double>& periodogram,
                                 const ParametricSpectralFamily& family,
                                 const Eigen::VectorXd& theta,
                                 const FrequencyGrid& grid) {
  if (theta.size() != family.dim())
    throw std::invalid_argument("whittle: theta dimension mismatch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(family.dim());
  for (int m = 0; m < grid.size(); ++m) {
    double l = grid.nodes[m];
    g += grid.weights[m] * (family.grad_log_f(theta, l) +
                            periodogram[m] * family.grad_inv_f(theta, l));
  }
  return g / (4.0 * kPi);
}

Eigen::VectorXd whittle_score(const Sample& sample,
                              const ParametricSpectralFamily& family,
                              const Eigen::VectorXd& theta,
                              const FrequencyGrid& grid) {
  return whittle_score_pg(classical_periodogram(sample, grid), family, theta,
                          grid);
}

double asymptotic_kl(const TvArmaModel& model,
                     const ParametricSpectralFamily& family,
                     const Eigen::VectorXd& theta, const Quadrature& quad) {
  // log term has no u dependence for a stationary family.
  double log_part = gl_panels(-kPi, kPi, quad.lambda_panels, [&](double l) {
    return std::log(4.0 * kPi * kPi * family.f(theta, l));
  });

  // u-direction: midpoint rule split at the model's curve breakpoints.
  std::vector<double> edges{0.0, 1.0};
  for (const auto& c : model.alpha())
    for (double b : c.interior_breakpoints()) edges.push_back(b);
  for (const auto& c : model.beta())
    for (double b : c.interior_breakpoints()) edges.push_back(b);
  for (double b : model.sigma().interior_breakpoints()) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  double data_part = 0.0;
  for (size_t e = 0; e + 1 < edges.size(); ++e) {
    double lo = edges[e], hi = edges[e + 1];
    int pts = std::max(2, static_cast<int>(
                              std::ceil((hi - lo) * quad.u_points)));
    double h = (hi - lo) / pts;
    for (int i = 0; i < pts; ++i) {
      double u = lo + (i + 0.5) * h;
      data_part += h * gl_panels(-kPi, kPi, quad.lambda_panels, [&](double l) {
        return model.tv_spectral_density(u, l) / family.f(theta, l);
      });
    }
  }
  return (log_part + data_part) / (4.0 * kPi);
}

double r_log_term(const std::function<double(double, double)>& g, long n,
                  const Quadrature& quad) {
  if (n < 1) throw std::invalid_argument("r_log_term: n >= 1");
  return gl_panels(-kPi, kPi, quad.lambda_panels, [&](double l) {
    double riemann = 0.0;
    for (long t = 1; t <= n; ++t)
      riemann += std::log(g(static_cast<double>(t) / n, l));
    riemann /= static_cast<double>(n);
    double h = 1.0 / quad.u_points;
    double integral = 0.0;
    for (int i = 0; i < quad.u_points; ++i)
      integral += h * std::log(g((i + 0.5) * h, l));
    return riemann - integral;
  }) / (4.0 * kPi);
}

double r_log_term(const ParametricSpectralFamily& family,
                  const Eigen::VectorXd& theta, long n) {
  return r_log_term(
      [&](double, double l) { return family.f(theta, l); }, n);
}

Eigen::MatrixXd fisher_information(const ParametricSpectralFamily& family,
                                   const Eigen::VectorXd& theta,
                                   int lambda_panels) {
  const int d = family.dim();
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(d, d);
  double span = 2.0 * kPi / lambda_panels;
  for (int p = 0; p < lambda_panels; ++p) {
    double a = -kPi + p * span;
    double mid = a + 0.5 * span, half = 0.5 * span;
    for (int i = 0; i < kGl; ++i) {
      double l = mid + half * kGlX[i];
      Eigen::VectorXd g = family.grad_log_f(theta, l);
      info += (half * kGlW[i]) * (g * g.transpose());
    }
  }
  info /= 4.0 * kPi;
  // Symmetrize away roundoff.
  return 0.5 * (info + info.transpose());
}

WhittleFitResult fit_whittle(const Sample& sample,
                             const ParametricSpectralFamily& family,
                             const OptimizerConfig& cfg, int grid_points) {
  if (sample.n < 1) throw std::invalid_argument("fit_whittle: empty sample");
  FrequencyGrid grid =
      grid_points > 0 ? FrequencyGrid(grid_points)
                      : FrequencyGrid::exactness_grade(sample.n);
  std::vector<double> pg = classical_periodogram(sample, grid);

  BoxObjective obj = [&](const Eigen::VectorXd& theta, Eigen::VectorXd* g) {
    double v = whittle_likelihood_pg(pg, family, theta, grid);
    if (g) {
      if (std::isfinite(v))
        *g = whittle_score_pg(pg, family, theta, grid);
      else
        g->setZero(family.dim());
    }
    return v;
  };

  double ms = 0.0;
  for (long t = 1; t <= sample.n; ++t) ms += sample[t] * sample[t];
  ms /= static_cast<double>(sample.n);
  ms = std::clamp(ms, family.box().lo.back(), family.box().hi.back());

  const int d = family.dim();
  std::vector<Eigen::VectorXd> starts;
  for (double c : {0.0, -0.4, 0.4}) {
    Eigen::VectorXd s = Eigen::VectorXd::Constant(d, c);
    s[d - 1] = ms;
    starts.push_back(family.box().project(s));
  }

  WhittleFitResult res;
  res.opt = minimize_box_multistart(obj, family.box(), starts, cfg);
  res.family_name = family.name();
  res.grid_size = grid.size();
  Eigen::MatrixXd info = fisher_information(family, res.opt.theta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(info);
  res.min_fisher_eigenvalue = es.eigenvalues().minCoeff();
  return res;
}

}  // namespace locspec
