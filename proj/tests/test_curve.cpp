#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "locspec/curve.hpp"

using locspec::CoefficientCurve;
using locspec::CurveKind;

TEST_CASE("constant curve") {
  CoefficientCurve c(0.7);
  CHECK(c(0.0) == 0.7);
  CHECK(c(0.5) == 0.7);
  CHECK(c(1.0) == 0.7);
  CHECK(c(-3.0) == 0.7);  // frozen below 0
  CHECK(c.total_variation() == 0.0);
  CHECK(c.sup_abs() == 0.7);
  CHECK(c.is_constant());
}

TEST_CASE("piecewise constant evaluation and variation") {
  CoefficientCurve c(CurveKind::PiecewiseConstant, {0.0, 0.25, 0.6, 1.0},
                     {1.0, -2.0, 0.5});
  CHECK(c(0.1) == 1.0);
  CHECK(c(0.3) == -2.0);
  CHECK(c(0.9) == 0.5);
  CHECK(c(-0.5) == 1.0);
  // jumps: |1-(-2)| + |-2-0.5| = 5.5
  CHECK(c.total_variation() == doctest::Approx(5.5));
  CHECK(c.sup_abs() == doctest::Approx(2.0));
  CHECK(c.interior_breakpoints().size() == 2);
}

TEST_CASE("piecewise linear evaluation and variation") {
  CoefficientCurve c(CurveKind::PiecewiseLinear, {0.0, 0.5, 1.0},
                     {0.0, 1.0, -1.0});
  CHECK(c(0.25) == doctest::Approx(0.5));
  CHECK(c(0.75) == doctest::Approx(0.0));
  CHECK(c.total_variation() == doctest::Approx(3.0));
  CHECK(c.min_on_unit() == doctest::Approx(-1.0));
}

TEST_CASE("polynomial variation via derivative roots") {
  // g(u) = u(1-u) rises to 1/4 at u = 1/2 then falls back: V = 1/2.
  CoefficientCurve c = CoefficientCurve::polynomial({0.0, 1.0, -1.0});
  CHECK(c(0.5) == doctest::Approx(0.25));
  CHECK(c.total_variation() == doctest::Approx(0.5));
  CHECK(c.sup_abs() == doctest::Approx(0.25));
}

TEST_CASE("integrate_product is exact on polynomials") {
  CoefficientCurve a = CoefficientCurve::polynomial({0.0, 1.0});   // u
  CoefficientCurve b = CoefficientCurve::polynomial({1.0, 0.0, 3.0});  // 1+3u^2
  // int u(1+3u^2) = 1/2 + 3/4
  CHECK(locspec::integrate_product(a, b) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(locspec::integrate(a) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("integrate_product splits at jumps") {
  CoefficientCurve a(CurveKind::PiecewiseConstant, {0.0, 0.5, 1.0}, {2.0, 4.0});
  CoefficientCurve b = CoefficientCurve::polynomial({0.0, 1.0});
  // int_0^0.5 2u + int_0.5^1 4u = 0.25 + 1.5
  CHECK(locspec::integrate_product(a, b) == doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("curve validation") {
  CHECK_THROWS_AS(CoefficientCurve(CurveKind::PiecewiseConstant,
                                   {0.0, 0.6, 0.4, 1.0}, {1.0, 2.0, 3.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoefficientCurve(CurveKind::PiecewiseConstant,
                                   {0.1, 0.5, 1.0}, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoefficientCurve(CurveKind::PiecewiseLinear, {0.0, 1.0},
                                   {1.0}),
                  std::invalid_argument);
}
