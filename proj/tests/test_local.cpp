#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "locspec/local.hpp"
#include "locspec/whittle.hpp"

using namespace locspec;

TEST_CASE("uniform kernel over the full window recovers global averages") {
  const long n = 64;
  Sample s = simulate(ar1_model(0.5), n, 1);
  SmoothingKernel uni(KernelKind::Uniform);
  double m2 = 0.0;
  for (long t = 1; t <= n; ++t) m2 += s[t] * s[t];
  m2 /= static_cast<double>(n);
  CHECK(local_covariance(s, uni, 1.0, 0.5, 0) ==
        doctest::Approx(m2).epsilon(1e-12));
  CHECK(local_kernel_mass(n, uni, 1.0, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("kernel mass is near one away from the edges") {
  for (auto kind : {KernelKind::Epanechnikov, KernelKind::Triangular}) {
    SmoothingKernel k(kind);
    double mass = local_kernel_mass(2000, k, 0.2, 0.5);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("local fit is scale equivariant") {
  const long n = 256;
  Sample s = simulate(tvar1_model(CoefficientCurve::polynomial({-0.3, -0.3})),
                      n, 2);
  Sample cs = s;
  const double c = 3.0;
  for (auto& v : cs.values) v *= c;
  SmoothingKernel k(KernelKind::Epanechnikov);
  double b = 0.3;
  auto a = local_yule_walker(s, 1, k, b, 0.5);
  auto a2 = local_yule_walker(cs, 1, k, b, 0.5);
  CHECK(a2.alpha[0] == doctest::Approx(a.alpha[0]).epsilon(1e-12));
  CHECK(a2.sigma2 == doctest::Approx(c * c * a.sigma2).epsilon(1e-12));
}

TEST_CASE("closed-form local fit finds alternating and white samples") {
  // X_t = (-1)^t solves X_t = -X_{t-1}: alpha_hat near +1
  Sample alt;
  alt.n = 200;
  for (long t = 1; t <= alt.n; ++t)
    alt.values.push_back(t % 2 == 0 ? 1.0 : -1.0);
  SmoothingKernel k(KernelKind::Triangular);
  auto r = local_yule_walker(alt, 1, k, 0.4, 0.5);
  CHECK(r.alpha[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.sigma2 == doctest::Approx(0.0).epsilon(1e-6));

  Sample wn = simulate(white_noise_model(), 4000, 3);
  auto w = local_yule_walker(wn, 1, k, 0.5, 0.5);
  CHECK(std::abs(w.alpha[0]) < 0.05);
  CHECK(w.sigma2 == doctest::Approx(1.0).epsilon(0.1));
  CHECK_FALSE(w.negative_variance);
}

TEST_CASE("full-window uniform likelihood reduces to the global one") {
  const long n = 48;
  Sample s = simulate(ar1_model(0.5), n, 4);
  FrequencyGrid g = FrequencyGrid::exactness_grade(n);
  SmoothingKernel uni(KernelKind::Uniform);
  auto family = ParametricSpectralFamily::ar(1);
  Eigen::VectorXd theta(2);
  theta << -0.4, 1.1;
  double local = local_whittle_likelihood(s, family, uni, 1.0, 0.5, theta, g);
  double global = whittle_likelihood(s, family, theta, g);
  CHECK(local == doctest::Approx(global).epsilon(1e-10));
}

TEST_CASE("precomputed transform matches the direct likelihood and score") {
  const long n = 96;
  Sample s = simulate(tvar1_model(CoefficientCurve::polynomial({-0.2, -0.4})),
                      n, 5);
  FrequencyGrid g = FrequencyGrid::exactness_grade(n);
  SmoothingKernel k(KernelKind::Epanechnikov);
  double b = 0.4, u = 0.5;
  auto data = make_local_whittle_data(s, k, b, u, g);
  auto family = ParametricSpectralFamily::ar(1);
  Eigen::VectorXd theta(2);
  theta << -0.3, 1.0;
  CHECK(local_whittle_likelihood_data(data, family, theta, g) ==
        doctest::Approx(
            local_whittle_likelihood(s, family, k, b, u, theta, g))
            .epsilon(1e-12));
  Eigen::VectorXd grad = local_whittle_score_data(data, family, theta, g);
  const double h = 1e-6;
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXd tp = theta, tm = theta;
    tp[j] += h;
    tm[j] -= h;
    double fd = (local_whittle_likelihood_data(data, family, tp, g) -
                 local_whittle_likelihood_data(data, family, tm, g)) /
                (2.0 * h);
    CHECK(grad[j] == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("optimized local fit agrees with the closed form for AR") {
  const long n = 512;
  Sample s = simulate(tvar1_model(CoefficientCurve::polynomial({-0.2, -0.4})),
                      n, 6);
  SmoothingKernel k(KernelKind::Epanechnikov);
  double b = std::pow(static_cast<double>(n), -0.2);
  std::vector<double> us{0.3, 0.5, 0.7};
  auto fit = fit_local_whittle(s, ParametricSpectralFamily::ar(1), k, b, us);
  REQUIRE(fit.theta.size() == us.size());
  for (size_t i = 0; i < us.size(); ++i) {
    CHECK(fit.failed[i] == 0);
    auto yw = local_yule_walker(s, 1, k, b, us[i]);
    CHECK(fit.theta[i][0] == doctest::Approx(yw.alpha[0]).epsilon(1e-6));
    CHECK(fit.theta[i][1] ==
          doctest::Approx(yw.sigma2).epsilon(1e-3));
  }
}

TEST_CASE("window preconditions") {
  Sample s = simulate(ar1_model(0.5), 64, 7);
  SmoothingKernel k(KernelKind::Epanechnikov);
  // u outside [b/2, 1 - b/2]
  CHECK_THROWS_AS(local_yule_walker(s, 1, k, 0.4, 0.05), std::invalid_argument);
  // nb < 2p + 2
  CHECK_THROWS_AS(local_yule_walker(s, 3, k, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(
      fit_local_whittle(s, ParametricSpectralFamily::ar(1), k, 0.4, {0.05}),
      std::invalid_argument);
}
