#pragma once

#include <functional>

#include "locspec/functional.hpp"
#include "locspec/model.hpp"
#include "locspec/preperiodogram.hpp"
#include "locspec/simulate.hpp"

namespace locspec {

// Quadrature controls for the double integrals F(phi) and the CLT covariance
// functional. u-direction: midpoint rule with breakpoint splitting (curves
// may jump); lambda-direction: piecewise Gauss-Legendre split at functional
// discontinuities.
struct Quadrature {
  int u_points = 401;
  int lambda_panels = 16;  // GL panels per smooth lambda piece
};

// Ordered, numerically stable reduction (pairwise summation).
double pairwise_sum(const std::vector<double>& v);

// F_n(phi) via frequency-domain quadrature of the time average of the
// pre-periodogram. O(n^2 M); intended as the slow reference route.
double spectral_mean_freq(const Sample& sample, const Taper& taper,
                          const SpectralFunctional& phi,
                          const FrequencyGrid& grid);

// F_n(phi) via the time-domain lag form with closed-form Fourier
// coefficients. k_max < 0 means exactness (n - 1), capped automatically for
// cosine-polynomial functionals.
double spectral_mean_lag(const Sample& sample, const Taper& taper,
                         const SpectralFunctional& phi, long k_max = -1);

// F(phi) = int h^2(u) int phi(u, lambda) f(u, lambda) dlambda du.
double theoretical_functional(const TvArmaModel& model, const Taper& taper,
                              const SpectralFunctional& phi,
                              const Quadrature& quad = {});

// E_n(phi) = sqrt(n) (F_n(phi) - F), with F supplied.
double empirical_process(const Sample& sample, const Taper& taper,
                         const SpectralFunctional& phi, double theoretical);

// E_n(phi) with F computed from the model.
double empirical_process(const Sample& sample, const Taper& taper,
                         const SpectralFunctional& phi,
                         const TvArmaModel& model, const Quadrature& quad = {});

// Asymptotic covariance of (E(phi_j), E(phi_k)):
//   2 pi int h^4 int phi_j (phi_k(u,l) + phi_k(u,-l)) f^2 dl du
//   + kappa4 int h^4 (int phi_j f dl)(int phi_k f dl) du.
double clt_covariance(const SpectralFunctional& phi_j,
                      const SpectralFunctional& phi_k,
                      const TvArmaModel& model, const Taper& taper,
                      const Quadrature& quad = {});

// Exact finite-n expectation of F_n(phi) from the true covariances of the
// triangular array (transfer-coefficient route; no Monte Carlo noise).
double expected_spectral_mean(const TvArmaModel& model, const Taper& taper,
                              const SpectralFunctional& phi, long n,
                              double coeff_tol = 1e-12);

}  // namespace locspec
