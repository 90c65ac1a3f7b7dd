#include "doctest.h"

#include <cmath>

#include "locspec/rng.hpp"

using locspec::CounterRng;

TEST_CASE("draws are pure functions of (seed, stream, counter)") {
  CounterRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  CHECK(a.uniform(0) == b.uniform(0));
  CHECK(a.uniform(123456) == b.uniform(123456));
  CHECK(a.uniform(5) != c.uniform(5));
  CHECK(a.uniform(5) != d.uniform(5));
}

TEST_CASE("uniform stays inside (0,1) and fills the interval") {
  CounterRng rng(1, 0);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform(static_cast<std::uint64_t>(i));
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo < 1e-3);
  CHECK(hi > 1.0 - 1e-3);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("inverse normal cdf hits reference quantiles") {
  CHECK(CounterRng::inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(CounterRng::inverse_normal_cdf(0.975) ==
        doctest::Approx(1.9599639845400545).epsilon(1e-12));
  CHECK(CounterRng::inverse_normal_cdf(0.025) ==
        doctest::Approx(-1.9599639845400545).epsilon(1e-12));
  CHECK(CounterRng::inverse_normal_cdf(0.84134474606854293) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(CounterRng::inverse_normal_cdf(1e-10) ==
        doctest::Approx(-6.3613409024040557).epsilon(1e-9));
}

TEST_CASE("normal draws have the right first moments") {
  CounterRng rng(9, 3);
  const int n = 200000;
  double m = 0.0, v = 0.0, k = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = rng.normal(static_cast<std::uint64_t>(i));
    m += z;
    v += z * z;
    k += z * z * z * z;
  }
  m /= n;
  v /= n;
  k /= n;
  CHECK(m == doctest::Approx(0.0).epsilon(1.0).scale(0.01));
  CHECK(v == doctest::Approx(1.0).epsilon(0.01));
  CHECK(k == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("standardized uniform: support, variance, fourth cumulant") {
  CounterRng rng(17, 0);
  const double root3 = std::sqrt(3.0);
  const int n = 200000;
  double v = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = rng.standardized_uniform(static_cast<std::uint64_t>(i));
    CHECK(std::abs(x) <= root3);
    v += x * x;
    m4 += x * x * x * x;
  }
  v /= n;
  m4 /= n;
  CHECK(v == doctest::Approx(1.0).epsilon(0.01));
  // E X^4 = 9/5 for uniform on [-sqrt(3), sqrt(3)]; kappa4 = 9/5 - 3 = -1.2
  CHECK(m4 - 3.0 * v * v == doctest::Approx(-1.2).epsilon(0.02));
}
