#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "locspec/family.hpp"
#include "locspec/functional.hpp"
#include "locspec/kernel.hpp"
#include "locspec/optimize.hpp"
#include "locspec/simulate.hpp"

namespace locspec {

// Kernel-weighted local lag covariance
//   c_hat(u, k) = (1/n) sum_t (1/b) K((u - t/n)/b) X_[t+1/2+k/2] X_[t+1/2-k/2]
// with the same floor index rule as the single-time spectral estimate;
// out-of-range index pairs contribute 0. Symmetric in k.
double local_covariance(const Sample& sample, const SmoothingKernel& kernel,
                        double b, double u, long k);

// (1/n) sum_t (1/b) K((u - t/n)/b); close to 1 inside [b/2, 1 - b/2].
double local_kernel_mass(long n, const SmoothingKernel& kernel, double b,
                         double u);

struct LocalYuleWalkerResult {
  Eigen::VectorXd alpha;  // alpha_hat_1..alpha_hat_p
  double sigma2 = 0.0;
  double condition = 0.0;       // condition number of the local lag matrix
  bool negative_variance = false;  // finite-n artifact, reported not clamped
};

// Closed-form local AR(p) fit: alpha = -Sigma(u)^{-1} C(u),
// sigma2 = c_hat(u,0) + sum_k alpha_k c_hat(u,k). Errors when the lag matrix
// condition number exceeds 1e10 or the window is too short (nb < 2p + 2).
LocalYuleWalkerResult local_yule_walker(const Sample& sample, int p,
                                        const SmoothingKernel& kernel,
                                        double b, double u);

// Kernel-weighted single-time spectral transform at u:
//   d(lambda) = (1/n) sum_t w_t J_n(t/n, lambda)
//             = (1/2pi) sum_k c_hat(u,k) e^{-i lambda k},
// evaluated on the grid once; every likelihood evaluation at this u is then
// O(grid size).
struct LocalWhittleData {
  double u = 0.0;
  double kernel_mass = 0.0;
  std::vector<double> lag_covs;   // c_hat(u, 0..n-1)
  std::vector<double> transform;  // d(lambda_m)
};

LocalWhittleData make_local_whittle_data(const Sample& sample,
                                         const SmoothingKernel& kernel,
                                         double b, double u,
                                         const FrequencyGrid& grid);

double local_whittle_likelihood_data(const LocalWhittleData& data,
                                     const ParametricSpectralFamily& family,
                                     const Eigen::VectorXd& theta,
                                     const FrequencyGrid& grid);

Eigen::VectorXd local_whittle_score_data(const LocalWhittleData& data,
                                         const ParametricSpectralFamily& family,
                                         const Eigen::VectorXd& theta,
                                         const FrequencyGrid& grid);

// Kernel-weighted quasi-likelihood at rescaled time u (stationary family
// inside the window). Requires u in [b/2, 1 - b/2].
double local_whittle_likelihood(const Sample& sample,
                                const ParametricSpectralFamily& family,
                                const SmoothingKernel& kernel, double b,
                                double u, const Eigen::VectorXd& theta,
                                const FrequencyGrid& grid);

struct LocalFitResult {
  double bandwidth = 0.0;
  std::string kernel_name;
  std::string family_name;
  std::vector<double> u;
  std::vector<Eigen::VectorXd> theta;
  std::vector<double> grad_norm;
  std::vector<int> iterations;
  std::vector<int> converged;
  std::vector<int> at_boundary;
  std::vector<int> failed;  // per-point optimizer failures, not fatal
};

// Per-u minimizers with warm starts along the grid; AR families also seed
// from the closed-form local solver. u_grid must lie in [b/2, 1 - b/2].
LocalFitResult fit_local_whittle(const Sample& sample,
                                 const ParametricSpectralFamily& family,
                                 const SmoothingKernel& kernel, double b,
                                 const std::vector<double>& u_grid,
                                 const OptimizerConfig& cfg = {},
                                 int grid_points = 0);

}  // namespace locspec
