#include "locspec/curve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace locspec {

namespace {

// 16-point Gauss-Legendre on [-1,1].
constexpr int kGlN = 16;
const double kGlX[kGlN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
const double kGlW[kGlN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

double poly_eval(const std::vector<double>& c, double u) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * u + *it;
  return v;
}

// Real roots of the polynomial with coefficients c (ascending) inside (0,1),
// via companion-matrix eigenvalues.
std::vector<double> poly_roots_in_unit(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::vector<double> roots;
  if (c.size() < 2) return roots;
  const int d = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (int i = 0; i < d; ++i) {
    auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) < 1e-10 && z.real() > 1e-12 &&
        z.real() < 1.0 - 1e-12) {
      roots.push_back(z.real());
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

CoefficientCurve::CoefficientCurve(double value)
    : kind_(CurveKind::Polynomial), values_{value} {}

CoefficientCurve::CoefficientCurve(CurveKind kind,
                                   std::vector<double> breakpoints,
                                   std::vector<double> values)
    : kind_(kind),
      breakpoints_(std::move(breakpoints)),
      values_(std::move(values)) {
  validate();
}

void CoefficientCurve::validate() const {
  for (double v : values_) {
    if (!std::isfinite(v))
      throw std::invalid_argument("curve: non-finite value");
  }
  for (double b : breakpoints_) {
    if (!std::isfinite(b))
      throw std::invalid_argument("curve: non-finite breakpoint");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw std::invalid_argument("curve: breakpoints not strictly increasing");
  }
  switch (kind_) {
    case CurveKind::Polynomial:
      if (!breakpoints_.empty())
        throw std::invalid_argument("curve: polynomial takes no breakpoints");
      if (values_.empty())
        throw std::invalid_argument("curve: empty coefficient list");
      break;
    case CurveKind::PiecewiseConstant:
      if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 ||
          breakpoints_.back() != 1.0)
        throw std::invalid_argument(
            "curve: piecewise-constant breakpoints must span [0,1]");
      if (values_.size() + 1 != breakpoints_.size())
        throw std::invalid_argument(
            "curve: piecewise-constant needs one value per segment");
      break;
    case CurveKind::PiecewiseLinear:
      if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 ||
          breakpoints_.back() != 1.0)
        throw std::invalid_argument(
            "curve: piecewise-linear breakpoints must span [0,1]");
      if (values_.size() != breakpoints_.size())
        throw std::invalid_argument(
            "curve: piecewise-linear needs one value per node");
      break;
  }
}

double CoefficientCurve::operator()(double u) const {
  if (u < 0.0) u = 0.0;
  switch (kind_) {
    case CurveKind::Polynomial:
      return poly_eval(values_, u);
    case CurveKind::PiecewiseConstant: {
      // Segment [b_i, b_{i+1}); last segment closed at 1.
      auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), u);
      std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
      if (idx == 0) return values_.front();
      if (idx >= breakpoints_.size()) return values_.back();
      return values_[idx - 1];
    }
    case CurveKind::PiecewiseLinear: {
      auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), u);
      std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
      if (idx == 0) return values_.front();
      if (idx >= breakpoints_.size()) return values_.back();
      double x0 = breakpoints_[idx - 1], x1 = breakpoints_[idx];
      double w = (u - x0) / (x1 - x0);
      return (1.0 - w) * values_[idx - 1] + w * values_[idx];
    }
  }
  return 0.0;
}

double CoefficientCurve::total_variation() const {
  switch (kind_) {
    case CurveKind::PiecewiseConstant: {
      double v = 0.0;
      for (std::size_t i = 1; i < values_.size(); ++i)
        v += std::abs(values_[i] - values_[i - 1]);
      return v;
    }
    case CurveKind::PiecewiseLinear: {
      double v = 0.0;
      for (std::size_t i = 1; i < values_.size(); ++i)
        v += std::abs(values_[i] - values_[i - 1]);
      return v;
    }
    case CurveKind::Polynomial: {
      // V = sum over monotone pieces; split at roots of the derivative.
      std::vector<double> d;
      for (std::size_t i = 1; i < values_.size(); ++i)
        d.push_back(values_[i] * static_cast<double>(i));
      std::vector<double> pts = poly_roots_in_unit(d);
      pts.insert(pts.begin(), 0.0);
      pts.push_back(1.0);
      double v = 0.0;
      for (std::size_t i = 1; i < pts.size(); ++i)
        v += std::abs(poly_eval(values_, pts[i]) -
                      poly_eval(values_, pts[i - 1]));
      return v;
    }
  }
  return 0.0;
}

double CoefficientCurve::sup_abs() const {
  switch (kind_) {
    case CurveKind::PiecewiseConstant:
    case CurveKind::PiecewiseLinear: {
      double m = 0.0;
      for (double v : values_) m = std::max(m, std::abs(v));
      return m;
    }
    case CurveKind::Polynomial: {
      std::vector<double> d;
      for (std::size_t i = 1; i < values_.size(); ++i)
        d.push_back(values_[i] * static_cast<double>(i));
      std::vector<double> pts = poly_roots_in_unit(d);
      pts.insert(pts.begin(), 0.0);
      pts.push_back(1.0);
      double m = 0.0;
      for (double p : pts) m = std::max(m, std::abs(poly_eval(values_, p)));
      return m;
    }
  }
  return 0.0;
}

double CoefficientCurve::min_on_unit() const {
  switch (kind_) {
    case CurveKind::PiecewiseConstant:
    case CurveKind::PiecewiseLinear: {
      double m = std::numeric_limits<double>::infinity();
      for (double v : values_) m = std::min(m, v);
      return m;
    }
    case CurveKind::Polynomial: {
      std::vector<double> d;
      for (std::size_t i = 1; i < values_.size(); ++i)
        d.push_back(values_[i] * static_cast<double>(i));
      std::vector<double> pts = poly_roots_in_unit(d);
      pts.insert(pts.begin(), 0.0);
      pts.push_back(1.0);
      double m = std::numeric_limits<double>::infinity();
      for (double p : pts) m = std::min(m, poly_eval(values_, p));
      return m;
    }
  }
  return 0.0;
}

std::vector<double> CoefficientCurve::interior_breakpoints() const {
  std::vector<double> pts;
  if (kind_ == CurveKind::Polynomial) return pts;
  for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i)
    pts.push_back(breakpoints_[i]);
  return pts;
}

bool CoefficientCurve::is_constant() const {
  if (kind_ == CurveKind::Polynomial) {
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] != 0.0) return false;
    return true;
  }
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] != values_[0]) return false;
  return true;
}

double integrate_product(const CoefficientCurve& a, const CoefficientCurve& b) {
  std::vector<double> pts{0.0, 1.0};
  for (double p : a.interior_breakpoints()) pts.push_back(p);
  for (double p : b.interior_breakpoints()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double lo = pts[i - 1], hi = pts[i];
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int g = 0; g < kGlN; ++g) {
      double u = mid + half * kGlX[g];
      s += kGlW[g] * a(u) * b(u);
    }
    total += s * half;
  }
  return total;
}

double integrate(const CoefficientCurve& a) {
  return integrate_product(a, CoefficientCurve::constant(1.0));
}

}  // namespace locspec
