#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace locspec {

enum class CurveKind { PiecewiseConstant, PiecewiseLinear, Polynomial };

// A bounded-variation coefficient curve on [0,1]. Three representations are
// supported, all with exactly computable total variation; evaluation extends
// to u < 0 by freezing the value at 0.
class CoefficientCurve {
 public:
  // Constant curve.
  explicit CoefficientCurve(double value);

  // kind = PiecewiseConstant: breakpoints are the m+1 segment edges
  //   (first 0, last 1, strictly increasing), values are the m segment values.
  // kind = PiecewiseLinear: breakpoints are m+1 nodes, values the m+1 node
  //   values, linear in between.
  // kind = Polynomial: values are coefficients c0 + c1*u + ... ; breakpoints
  //   must be empty.
  CoefficientCurve(CurveKind kind, std::vector<double> breakpoints,
                   std::vector<double> values);

  static CoefficientCurve constant(double v) { return CoefficientCurve(v); }
  static CoefficientCurve polynomial(std::vector<double> coeffs) {
    return CoefficientCurve(CurveKind::Polynomial, {}, std::move(coeffs));
  }

  CurveKind kind() const { return kind_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  // Defined for u <= 1; curve(u) = curve(0) for u < 0.
  double operator()(double u) const;

  double total_variation() const;
  double sup_abs() const;        // sup_{[0,1]} |g|
  double min_on_unit() const;    // inf_{[0,1]} g

  // Interior points where the curve may jump or kink (quadrature splitting).
  std::vector<double> interior_breakpoints() const;

  bool is_constant() const;

 private:
  void validate() const;

  CurveKind kind_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Integral over [0,1] of a(u)*b(u), splitting at both curves' breakpoints and
// using Gauss-Legendre nodes per piece (exact for the supported kinds up to
// high polynomial degree).
double integrate_product(const CoefficientCurve& a, const CoefficientCurve& b);

double integrate(const CoefficientCurve& a);

}  // namespace locspec
