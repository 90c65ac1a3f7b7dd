#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "locspec/curve.hpp"

namespace locspec {

enum class Innovation { Gaussian, StandardizedUniform };

inline double kurtosis_cumulant(Innovation inn) {
  return inn == Innovation::Gaussian ? 0.0 : -1.2;
}

inline std::string to_string(Innovation inn) {
  return inn == Innovation::Gaussian ? "gaussian" : "standardized-uniform";
}

struct InvalidModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ell(j): the decay weight controlling coefficient and covariance decay.
// Natural logarithms; kappa defaults to 1.
double decay_weight(long j, double kappa = 1.0);

// Time-varying ARMA model: sum_{j=0}^p alpha_j(t/n) X_{t-j}
//   = sum_{k=0}^q beta_k(t/n) sigma((t-k)/n) eps_{t-k},
// with alpha_0 = beta_0 = 1 implicit and curves frozen at their value at 0
// for u < 0.
class TvArmaModel {
 public:
  TvArmaModel(std::vector<CoefficientCurve> alpha,
              std::vector<CoefficientCurve> beta, CoefficientCurve sigma,
              Innovation innovation, double stability_margin = 0.1);

  int p() const { return static_cast<int>(alpha_.size()); }
  int q() const { return static_cast<int>(beta_.size()); }
  const std::vector<CoefficientCurve>& alpha() const { return alpha_; }
  const std::vector<CoefficientCurve>& beta() const { return beta_; }
  const CoefficientCurve& sigma() const { return sigma_; }
  Innovation innovation() const { return innovation_; }
  double kappa4() const { return kappa4_; }
  void set_kappa4(double k4) { kappa4_ = k4; }
  double stability_margin() const { return delta_; }

  // Smallest modulus among the roots of z -> sum alpha_j(u) z^j.
  double min_root_modulus(double u) const;

  // Per-gridpoint smallest root modulus on an equispaced grid (breakpoints of
  // all alpha curves included). Model is valid iff all moduli > 1 + delta and
  // sigma is positive.
  std::vector<std::pair<double, double>> validate(int grid_size = 201) const;

  // Throws InvalidModelError on a stability or positivity violation.
  void require_valid(int grid_size = 201) const;

  // f(u, lambda) = sigma^2(u) |B(u,lambda)|^2 / (2 pi |A(u,lambda)|^2).
  double tv_spectral_density(double u, double lambda) const;

  // c(u, k) = sum_j a(u, k+j) a(u, j), truncated where the geometric tail
  // bound drops below abs_tol.
  double tv_covariance(double u, long k, double abs_tol = 1e-12) const;

  // Exact MA(infinity) coefficients a_{t,n}(0..j_max) of the recursion,
  // via companion-matrix products (AR part) convolved with the MA curve
  // values.
  std::vector<double> transfer_coefficients(long t, long n, int j_max) const;

  // Limit curve a(u, j) = sum_k (alpha(u)^{j-k})_{11} beta_k(u) sigma(u).
  std::vector<double> limit_transfer_coefficients(double u, int j_max) const;

  // Truncation point: smallest j with K rho^j < abs_tol, rho = 1/(1+delta/2).
  int truncation_lag(double abs_tol = 1e-12) const;

  // Summed deviation sum_t |a_{t,n}(j) - a(t/n, j)| for a diagnostic report
  // (no pass/fail threshold attaches to it).
  double coefficient_deviation(long n, int j) const;

 private:
  std::vector<double> ar_values(double u) const;  // alpha_1..alpha_p at u

  std::vector<CoefficientCurve> alpha_;
  std::vector<CoefficientCurve> beta_;
  CoefficientCurve sigma_;
  Innovation innovation_;
  double kappa4_;
  double delta_;
};

// Convenience constructors used throughout the tests and configs.
TvArmaModel white_noise_model(double sigma = 1.0,
                              Innovation inn = Innovation::Gaussian);
TvArmaModel ar1_model(double phi, double sigma = 1.0,
                      Innovation inn = Innovation::Gaussian);
TvArmaModel tvar1_model(const CoefficientCurve& alpha1, double sigma = 1.0,
                        Innovation inn = Innovation::Gaussian);

}  // namespace locspec
