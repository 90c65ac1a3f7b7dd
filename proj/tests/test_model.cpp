#include "doctest.h"

#include <cmath>

#include "locspec/model.hpp"

using namespace locspec;

namespace {
constexpr double kPi = M_PI;
}

TEST_CASE("decay weight") {
  CHECK(decay_weight(0) == doctest::Approx(1.0));
  CHECK(decay_weight(1) == doctest::Approx(1.0));
  // ell(j) = |j| log^{1+kappa}|j| for |j| > 1
  CHECK(decay_weight(3) == doctest::Approx(3.0 * std::pow(std::log(3.0), 2.0)));
  CHECK(decay_weight(-3) == decay_weight(3));
}

TEST_CASE("stability validation catches unit roots") {
  CHECK_THROWS_AS(ar1_model(1.0).require_valid(), InvalidModelError);
  CHECK_NOTHROW(ar1_model(0.5).require_valid());
  // root modulus 1/0.95 < 1.1 fails the default margin
  CHECK_THROWS_AS(ar1_model(0.95).require_valid(), InvalidModelError);
  CHECK_NOTHROW(ar1_model(0.95, 1.0, Innovation::Gaussian).validate());
}

TEST_CASE("min root modulus for AR(1)") {
  TvArmaModel m = ar1_model(0.5);
  CHECK(m.min_root_modulus(0.3) == doctest::Approx(2.0));
}

TEST_CASE("white noise spectral density and covariance") {
  TvArmaModel m = white_noise_model(2.0);
  CHECK(m.tv_spectral_density(0.5, 1.0) == doctest::Approx(4.0 / (2.0 * kPi)));
  CHECK(m.tv_covariance(0.5, 0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(m.tv_covariance(0.5, 3) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("AR(1) covariance matches the closed form") {
  double phi = 0.6;
  TvArmaModel m = ar1_model(phi);
  double var = 1.0 / (1.0 - phi * phi);
  for (long k = 0; k <= 5; ++k)
    CHECK(m.tv_covariance(0.4, k) ==
          doctest::Approx(var * std::pow(phi, k)).epsilon(1e-9));
  CHECK(m.tv_covariance(0.4, -2) == m.tv_covariance(0.4, 2));
}

TEST_CASE("spectral density integrates to the variance") {
  TvArmaModel m = ar1_model(0.6);
  int grid = 20000;
  double acc = 0.0;
  for (int i = 0; i < grid; ++i) {
    double l = -kPi + 2.0 * kPi * (i + 0.5) / grid;
    acc += m.tv_spectral_density(0.5, l) * 2.0 * kPi / grid;
  }
  CHECK(acc == doctest::Approx(m.tv_covariance(0.5, 0)).epsilon(1e-8));
}

TEST_CASE("transfer coefficients: constant AR(1) is geometric") {
  double phi = 0.5, sigma = 1.3;
  TvArmaModel m = ar1_model(phi, sigma);
  auto a = m.transfer_coefficients(50, 100, 10);
  auto lim = m.limit_transfer_coefficients(0.5, 10);
  for (int j = 0; j <= 10; ++j) {
    CHECK(a[static_cast<size_t>(j)] ==
          doctest::Approx(sigma * std::pow(phi, j)).epsilon(1e-12));
    CHECK(lim[static_cast<size_t>(j)] == doctest::Approx(a[static_cast<size_t>(j)]));
  }
}

TEST_CASE("transfer coefficients: pure MA copies the curve") {
  TvArmaModel m({}, {CoefficientCurve::constant(0.7)},
                CoefficientCurve::constant(1.0), Innovation::Gaussian);
  auto a = m.transfer_coefficients(10, 20, 4);
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[1] == doctest::Approx(0.7));
  CHECK(a[2] == doctest::Approx(0.0));
}

TEST_CASE("time-varying transfer coefficients approach the limit curve") {
  TvArmaModel m = tvar1_model(CoefficientCurve::polynomial({-0.2, -0.5}));
  double d1 = m.coefficient_deviation(100, 3);
  double d2 = m.coefficient_deviation(400, 3);
  // summed deviation over t is O(1) in n, so the per-t average shrinks
  CHECK(d2 / 400.0 < d1 / 100.0);
}

TEST_CASE("truncation lag bounds the geometric tail") {
  TvArmaModel m = ar1_model(0.5);
  int jmax = m.truncation_lag(1e-12);
  CHECK(jmax > 10);
  auto a = m.limit_transfer_coefficients(0.5, jmax);
  CHECK(std::abs(a.back()) < 1e-10);
}

TEST_CASE("kurtosis cumulant by innovation type") {
  CHECK(kurtosis_cumulant(Innovation::Gaussian) == 0.0);
  CHECK(kurtosis_cumulant(Innovation::StandardizedUniform) == -1.2);
  CHECK(white_noise_model(1.0, Innovation::StandardizedUniform).kappa4() ==
        -1.2);
}
