#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "locspec/family.hpp"
#include "locspec/model.hpp"
#include "locspec/optimize.hpp"
#include "locspec/simulate.hpp"
#include "locspec/spectral_mean.hpp"

namespace locspec {

// Frequency-domain quasi-likelihood
//   L_n(theta) = (1/4pi) int { log(4 pi^2 f_theta) + I_n(lambda)/f_theta }
// for a stationary parametric family. The time average of the single-time
// spectral estimates equals the classical periodogram, so I_n carries all the
// data. Integral by the grid's trapezoid weights. Returns +inf when f_theta
// is not strictly positive on the grid.
double whittle_likelihood(const Sample& sample,
                          const ParametricSpectralFamily& family,
                          const Eigen::VectorXd& theta,
                          const FrequencyGrid& grid);

// Same likelihood from a precomputed periodogram (fit loop avoids the O(nM)
// transform per evaluation).
double whittle_likelihood_pg(const std::vector<double>& periodogram,
                             const ParametricSpectralFamily& family,
                             const Eigen::VectorXd& theta,
                             const FrequencyGrid& grid);

// Gradient of the likelihood in theta, on the same grid quadrature so it
// matches finite differences of whittle_likelihood.
Eigen::VectorXd whittle_score(const Sample& sample,
                              const ParametricSpectralFamily& family,
                              const Eigen::VectorXd& theta,
                              const FrequencyGrid& grid);

Eigen::VectorXd whittle_score_pg(const std::vector<double>& periodogram,
                                 const ParametricSpectralFamily& family,
                                 const Eigen::VectorXd& theta,
                                 const FrequencyGrid& grid);

// Population divergence
//   L(theta) = (1/4pi) int_0^1 int { log(4 pi^2 f_theta) + f(u,l)/f_theta }
// minimized at the best stationary approximation of the model.
double asymptotic_kl(const TvArmaModel& model,
                     const ParametricSpectralFamily& family,
                     const Eigen::VectorXd& theta, const Quadrature& quad = {});

// Riemann-sum-minus-integral discrepancy of (1/4pi) int log f over the time
// direction, for a general time-varying density g(u, lambda). Zero exactly
// when g does not depend on u.
double r_log_term(const std::function<double(double, double)>& g, long n,
                  const Quadrature& quad = {});

// Stationary families carry no time dependence, so the discrepancy vanishes.
double r_log_term(const ParametricSpectralFamily& family,
                  const Eigen::VectorXd& theta, long n);

// I(theta) = (1/4pi) int (grad log f)(grad log f)' dlambda. Symmetric PSD by
// construction; Gauss-Legendre panels in lambda.
Eigen::MatrixXd fisher_information(const ParametricSpectralFamily& family,
                                   const Eigen::VectorXd& theta,
                                   int lambda_panels = 64);

struct WhittleFitResult {
  OptimizerResult opt;
  std::string family_name;
  int grid_size = 0;
  double min_fisher_eigenvalue = 0.0;
};

// Global fit by projected quasi-Newton with a deterministic 3-point
// multistart. Grid default: exactness grade for the sample length.
WhittleFitResult fit_whittle(const Sample& sample,
                             const ParametricSpectralFamily& family,
                             const OptimizerConfig& cfg = {},
                             int grid_points = 0);

}  // namespace locspec
