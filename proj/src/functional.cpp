#include "locspec/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace locspec {

namespace {
constexpr double kPi = M_PI;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

FrequencyGrid::FrequencyGrid(int m) {
  if (m < 2) throw std::invalid_argument("FrequencyGrid: need >= 2 nodes");
  nodes.resize(m);
  weights.resize(m);
  const double h = 2.0 * kPi / (m - 1);
  for (int i = 0; i < m; ++i) {
    nodes[i] = -kPi + h * i;
    weights[i] = (i == 0 || i == m - 1) ? 0.5 * h : h;
  }
}

FrequencyPart FrequencyPart::one() { return FrequencyPart(); }

FrequencyPart FrequencyPart::cosine(int k0) {
  if (k0 < 1) throw std::invalid_argument("cosine: k0 >= 1 (use one() for 0)");
  FrequencyPart p;
  p.kind_ = FreqKind::Cosine;
  p.k0_ = k0;
  return p;
}

FrequencyPart FrequencyPart::indicator(double mu) {
  if (!(mu > 0.0 && mu <= kPi))
    throw std::invalid_argument("indicator: mu must lie in (0, pi]");
  FrequencyPart p;
  p.kind_ = FreqKind::Indicator;
  p.mu_ = mu;
  return p;
}

FrequencyPart FrequencyPart::sampled(FrequencyGrid grid,
                                     std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid.size())
    throw std::invalid_argument("sampled: size mismatch");
  FrequencyPart p;
  p.kind_ = FreqKind::Sampled;
  p.grid_ = std::move(grid);
  p.values_ = std::move(values);
  return p;
}

double FrequencyPart::operator()(double lambda) const {
  switch (kind_) {
    case FreqKind::One:
      return 1.0;
    case FreqKind::Cosine:
      return std::cos(k0_ * lambda);
    case FreqKind::Indicator:
      return (lambda >= 0.0 && lambda <= mu_) ? 1.0 : 0.0;
    case FreqKind::Sampled: {
      const auto& g = *grid_;
      if (lambda <= g.nodes.front()) return values_.front();
      if (lambda >= g.nodes.back()) return values_.back();
      double h = g.nodes[1] - g.nodes[0];
      int i = static_cast<int>((lambda - g.nodes.front()) / h);
      i = std::min(i, g.size() - 2);
      double w = (lambda - g.nodes[i]) / h;
      return (1.0 - w) * values_[i] + w * values_[i + 1];
    }
  }
  return 0.0;
}

std::complex<double> FrequencyPart::fourier_coeff(long k) const {
  const std::complex<double> i(0.0, 1.0);
  switch (kind_) {
    case FreqKind::One:
      return k == 0 ? std::complex<double>(2.0 * kPi, 0.0)
                    : std::complex<double>(0.0, 0.0);
    case FreqKind::Cosine:
      return (std::labs(k) == k0_) ? std::complex<double>(kPi, 0.0)
                                   : std::complex<double>(0.0, 0.0);
    case FreqKind::Indicator:
      if (k == 0) return {mu_, 0.0};
      return (std::exp(i * (static_cast<double>(k) * mu_)) - 1.0) /
             (i * static_cast<double>(k));
    case FreqKind::Sampled: {
      std::complex<double> s(0.0, 0.0);
      for (int m = 0; m < grid_->size(); ++m)
        s += grid_->weights[m] * values_[m] *
             std::exp(i * (grid_->nodes[m] * static_cast<double>(k)));
      return s;
    }
  }
  return {0.0, 0.0};
}

double FrequencyPart::variation() const {
  switch (kind_) {
    case FreqKind::One:
      return 0.0;
    case FreqKind::Cosine:
      return 4.0 * k0_;
    case FreqKind::Indicator:
      return mu_ < kPi ? 2.0 : 1.0;
    case FreqKind::Sampled: {
      double v = 0.0;
      for (std::size_t j = 1; j < values_.size(); ++j)
        v += std::abs(values_[j] - values_[j - 1]);
      return v;
    }
  }
  return 0.0;
}

double FrequencyPart::sup_abs() const {
  switch (kind_) {
    case FreqKind::One:
    case FreqKind::Cosine:
    case FreqKind::Indicator:
      return 1.0;
    case FreqKind::Sampled: {
      double m = 0.0;
      for (double v : values_) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

double FrequencyPart::l2_inner(const FrequencyPart& other) const {
  if (kind_ == FreqKind::Sampled || other.kind_ == FreqKind::Sampled) {
    const FrequencyPart& s = (kind_ == FreqKind::Sampled) ? *this : other;
    const FrequencyPart& o = (kind_ == FreqKind::Sampled) ? other : *this;
    double sum = 0.0;
    for (int m = 0; m < s.grid_->size(); ++m)
      sum += s.grid_->weights[m] * s.values_[m] * o(s.grid_->nodes[m]);
    return sum;
  }
  auto a = kind_, b = other.kind_;
  const FrequencyPart* x = this;
  const FrequencyPart* y = &other;
  if (static_cast<int>(a) > static_cast<int>(b)) {
    std::swap(a, b);
    std::swap(x, y);
  }
  if (a == FreqKind::One && b == FreqKind::One) return 2.0 * kPi;
  if (a == FreqKind::One && b == FreqKind::Cosine) return 0.0;
  if (a == FreqKind::One && b == FreqKind::Indicator) return y->mu_;
  if (a == FreqKind::Cosine && b == FreqKind::Cosine)
    return x->k0_ == y->k0_ ? kPi : 0.0;
  if (a == FreqKind::Cosine && b == FreqKind::Indicator)
    return std::sin(x->k0_ * y->mu_) / x->k0_;
  if (a == FreqKind::Indicator && b == FreqKind::Indicator)
    return std::min(x->mu_, y->mu_);
  return 0.0;
}

bool FrequencyPart::summable_coeffs() const {
  return kind_ == FreqKind::One || kind_ == FreqKind::Cosine;
}

long FrequencyPart::max_lag() const {
  switch (kind_) {
    case FreqKind::One:
      return 0;
    case FreqKind::Cosine:
      return k0_;
    default:
      return -1;
  }
}

std::vector<double> FrequencyPart::discontinuities() const {
  if (kind_ == FreqKind::Indicator) {
    std::vector<double> d{0.0};
    if (mu_ < kPi) d.push_back(mu_);
    return d;
  }
  return {};
}

double SpectralFunctional::operator()(double u, double lambda) const {
  if (u < 0.0 || u > 1.0 || lambda < -kPi || lambda > kPi) return 0.0;
  double s = 0.0;
  for (const auto& t : terms_) s += t.w(u) * t.psi(lambda);
  return s;
}

std::complex<double> SpectralFunctional::fourier_coeff(double u, long k) const {
  std::complex<double> s(0.0, 0.0);
  for (const auto& t : terms_) s += t.w(u) * t.psi.fourier_coeff(k);
  return s;
}

std::vector<std::complex<double>> SpectralFunctional::fourier_coefficients(
    double u, long k_min, long k_max) const {
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<size_t>(k_max - k_min + 1));
  for (long k = k_min; k <= k_max; ++k) out.push_back(fourier_coeff(u, k));
  return out;
}

bool SpectralFunctional::summable_coeffs() const {
  for (const auto& t : terms_)
    if (!t.psi.summable_coeffs()) return false;
  return true;
}

long SpectralFunctional::max_lag() const {
  long m = 0;
  for (const auto& t : terms_) {
    long l = t.psi.max_lag();
    if (l < 0) return -1;
    m = std::max(m, l);
  }
  return m;
}

std::vector<double> SpectralFunctional::u_breakpoints() const {
  std::vector<double> pts;
  for (const auto& t : terms_)
    for (double p : t.w.interior_breakpoints()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> SpectralFunctional::lambda_discontinuities() const {
  std::vector<double> pts;
  for (const auto& t : terms_)
    for (double p : t.psi.discontinuities()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

SpectralFunctional SpectralFunctional::scaled(double s) const {
  SpectralFunctional out;
  for (const auto& t : terms_) {
    if (t.w.kind() == CurveKind::Polynomial) {
      std::vector<double> c = t.w.values();
      for (double& v : c) v *= s;
      out.add_term(CoefficientCurve::polynomial(std::move(c)), t.psi);
    } else {
      std::vector<double> v = t.w.values();
      for (double& x : v) x *= s;
      out.add_term(CoefficientCurve(t.w.kind(), t.w.breakpoints(), std::move(v)),
                   t.psi);
    }
  }
  return out;
}

SpectralFunctional SpectralFunctional::plus(
    const SpectralFunctional& other) const {
  SpectralFunctional out = *this;
  for (const auto& t : other.terms_) out.add_term(t.w, t.psi);
  return out;
}

Taper Taper::none() { return Taper(); }

Taper Taper::cosine() {
  Taper t;
  t.kind_ = TaperKind::Cosine;
  return t;
}

Taper Taper::segment(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw std::invalid_argument("taper: segment must satisfy 0 <= a < b <= 1");
  Taper t;
  t.kind_ = TaperKind::Segment;
  t.a_ = a;
  t.b_ = b;
  return t;
}

Taper Taper::custom(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("taper: empty values");
  Taper t;
  t.kind_ = TaperKind::Custom;
  t.custom_ = std::move(values);
  return t;
}

double Taper::operator()(double u) const {
  if (u < 0.0 || u > 1.0) return 0.0;
  switch (kind_) {
    case TaperKind::None:
      return 1.0;
    case TaperKind::Cosine:
      return std::sin(kPi * u);
    case TaperKind::Segment:
      return (u >= a_ && u <= b_) ? 1.0 : 0.0;
    case TaperKind::Custom: {
      long n = static_cast<long>(custom_.size());
      long t = static_cast<long>(std::ceil(u * n));
      t = std::clamp<long>(t, 1, n);
      return custom_[static_cast<size_t>(t - 1)];
    }
  }
  return 0.0;
}

std::vector<double> Taper::values(long n) const {
  if (kind_ == TaperKind::Custom &&
      static_cast<long>(custom_.size()) != n)
    throw std::invalid_argument("taper: custom length does not match n");
  std::vector<double> v(static_cast<size_t>(n));
  for (long t = 1; t <= n; ++t)
    v[static_cast<size_t>(t - 1)] = (*this)(static_cast<double>(t) / n);
  return v;
}

void Taper::check_invariants(long n) const {
  std::vector<double> h = values(n);
  double tv = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] >= 0.0) || !std::isfinite(h[i]))
      throw std::invalid_argument("taper: values must be finite and >= 0");
    if (i > 0) tv += std::abs(h[i] - h[i - 1]);
  }
  (void)tv;  // finite by construction; boundedness is part of the contract
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    if (h[i - 1] > 0.0 && h[i] > 0.0 && h[i + 1] > 0.0) {
      if (h[i - 1] * h[i + 1] > h[i] * h[i] * (1.0 + 1e-12))
        throw std::invalid_argument("taper: log-concavity violated");
    }
  }
}

FunctionalNorms norms(const SpectralFunctional& phi, long n,
                      const Taper* taper) {
  FunctionalNorms out;
  const auto& terms = phi.terms();

  // rho2^2 = sum_{i,j} (int w_i w_j du)(int psi_i psi_j dlambda).
  double r2 = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j)
      r2 += integrate_product(terms[i].w, terms[j].w) *
            terms[i].psi.l2_inner(terms[j].psi);
  out.rho2 = std::sqrt(std::max(0.0, r2));

  if (n > 0) {
    double r2n = 0.0, r2nh = 0.0;
    for (long t = 1; t <= n; ++t) {
      double u = static_cast<double>(t) / n;
      double s = 0.0;
      for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = 0; j < terms.size(); ++j)
          s += terms[i].w(u) * terms[j].w(u) *
               terms[i].psi.l2_inner(terms[j].psi);
      r2n += s;
      double hu = taper ? (*taper)(u) : 1.0;
      r2nh += s * hu * hu * hu * hu;
    }
    out.rho2n = std::sqrt(std::max(0.0, r2n / n));
    out.rho2nh = std::sqrt(std::max(0.0, r2nh / n));
  }

  if (phi.summable_coeffs()) {
    long L = phi.max_lag();
    // sup over a fine u-grid plus all curve breakpoints.
    std::vector<double> ug;
    for (int i = 0; i <= 2000; ++i) ug.push_back(i / 2000.0);
    for (double b : phi.u_breakpoints()) ug.push_back(b);
    double rinf = 0.0, vsig = 0.0;
    for (long k = -L; k <= L; ++k) {
      double sup = 0.0;
      for (double u : ug) sup = std::max(sup, std::abs(phi.fourier_coeff(u, k)));
      rinf += sup;
      for (const auto& t : terms)
        vsig += std::abs(t.psi.fourier_coeff(k)) * t.w.total_variation();
    }
    out.rho_inf = rinf;
    out.v_sigma = vsig;
  } else {
    out.rho_inf = kInf;
    out.v_sigma = kInf;
  }

  // Variation norms; exact for a single separable term, subadditive upper
  // bounds otherwise.
  double iv = 0.0, vi = 0.0, vv = 0.0, ii = 0.0;
  for (const auto& t : terms) {
    iv += t.w.sup_abs() * t.psi.variation();
    vi += t.w.total_variation() * t.psi.sup_abs();
    vv += t.w.total_variation() * t.psi.variation();
    ii += t.w.sup_abs() * t.psi.sup_abs();
  }
  out.norm_inf_V = iv;
  out.norm_V_inf = vi;
  out.norm_V_V = vv;
  out.norm_inf_inf = ii;
  return out;
}

}  // namespace locspec
