#include "locspec/spectral_mean.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace locspec {

namespace {

constexpr double kPi = M_PI;

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

// Piecewise Gauss-Legendre over [-pi, pi], splitting at `breaks`.
template <typename F>
double integrate_lambda(F&& f, std::vector<double> breaks, int panels) {
  breaks.push_back(-kPi);
  breaks.push_back(kPi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    double lo = breaks[i - 1], hi = breaks[i];
    if (!(hi > lo)) continue;
    double step = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      double a = lo + p * step;
      double mid = a + 0.5 * step, half = 0.5 * step;
      double s = 0.0;
      for (int g = 0; g < kGlN; ++g) s += kGlW[g] * f(mid + half * kGlX[g]);
      total += s * half;
    }
  }
  return total;
}

// Midpoint rule on [0,1] split at `breaks` (midpoint avoids evaluating
// exactly at jump points of BV curves).
template <typename F>
double integrate_u(F&& f, std::vector<double> breaks, int u_points) {
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    double lo = breaks[i - 1], hi = breaks[i];
    if (!(hi > lo)) continue;
    int m = std::max(1, static_cast<int>(std::lround(u_points * (hi - lo))));
    double step = (hi - lo) / m;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += f(lo + (j + 0.5) * step);
    total += s * step;
  }
  return total;
}

std::vector<double> model_u_breaks(const TvArmaModel& model) {
  std::vector<double> b;
  auto add = [&](const CoefficientCurve& c) {
    for (double p : c.interior_breakpoints()) b.push_back(p);
  };
  for (const auto& c : model.alpha()) add(c);
  for (const auto& c : model.beta()) add(c);
  add(model.sigma());
  return b;
}

std::vector<double> taper_u_breaks(const Taper& taper) {
  // Segment tapers jump at their edges; the other kinds are smooth.
  std::vector<double> b;
  if (taper.kind() == TaperKind::Segment) {
    b.push_back(taper.segment_lo());
    b.push_back(taper.segment_hi());
  }
  return b;
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) {
  // Recursive pairwise reduction; order fixed by the data layout.
  std::function<double(std::size_t, std::size_t)> rec =
      [&](std::size_t lo, std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += v[i];
      return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid, hi);
  };
  return v.empty() ? 0.0 : rec(0, v.size());
}

double spectral_mean_freq(const Sample& sample, const Taper& taper,
                          const SpectralFunctional& phi,
                          const FrequencyGrid& grid) {
  const long n = sample.n;
  std::vector<double> xh = tapered_values(sample, taper);

  // Quadrature nodes: piecewise Gauss-Legendre split at the functional's
  // jumps. The integrand is phi times a trig polynomial of degree n-1, so the
  // panel width is capped at ~16/n to integrate that degree to roundoff even
  // on partial intervals (where the equispaced-grid exactness argument does
  // not apply). The grid argument sets a minimum resolution.
  std::vector<double> breaks = phi.lambda_discontinuities();
  breaks.push_back(-kPi);
  breaks.push_back(kPi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const double per_unit =
      std::max(static_cast<double>(n + 8) / 16.0,
               static_cast<double>(grid.size()) / (2.0 * kPi * kGlN));
  std::vector<std::pair<double, double>> nodes;  // (lambda, weight)
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    double lo = breaks[i - 1], hi = breaks[i];
    if (!(hi > lo)) continue;
    int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * per_unit)));
    double step = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      double mid = lo + (p + 0.5) * step, half = 0.5 * step;
      for (int g = 0; g < kGlN; ++g)
        nodes.emplace_back(mid + half * kGlX[g], half * kGlW[g]);
    }
  }

  std::vector<double> per_t(static_cast<size_t>(n));
  for (long t = 1; t <= n; ++t) {
    const long kmax = max_valid_lag(t, n);
    std::vector<double> d(static_cast<size_t>(kmax + 1));
    for (long k = 0; k <= kmax; ++k)
      d[static_cast<size_t>(k)] =
          xh[static_cast<size_t>(lag_index_plus(t, k) - 1)] *
          xh[static_cast<size_t>(lag_index_minus(t, k) - 1)];
    const double u = static_cast<double>(t) / n;
    double acc = 0.0;
    for (const auto& [lam, weight] : nodes) {
      double j = d[0];
      for (long k = 1; k <= kmax; ++k)
        j += 2.0 * d[static_cast<size_t>(k)] * std::cos(lam * k);
      acc += weight * phi(u, lam) * j;
    }
    per_t[static_cast<size_t>(t - 1)] = acc / (2.0 * kPi);
  }
  return pairwise_sum(per_t) / n;
}

double spectral_mean_lag(const Sample& sample, const Taper& taper,
                         const SpectralFunctional& phi, long k_max) {
  const long n = sample.n;
  if (k_max < 0) k_max = n - 1;
  if (phi.summable_coeffs()) k_max = std::min(k_max, phi.max_lag());
  std::vector<double> xh = tapered_values(sample, taper);

  const auto& terms = phi.terms();
  // Per-term real parts of psi_hat(k); imaginary parts cancel by the
  // k <-> -k pairing of identical lag products.
  std::vector<std::vector<double>> psi_re(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    psi_re[i].resize(static_cast<size_t>(k_max + 1));
    for (long k = 0; k <= k_max; ++k)
      psi_re[i][static_cast<size_t>(k)] =
          terms[i].psi.fourier_coeff(k).real();
  }

  std::vector<double> per_t(static_cast<size_t>(n));
  for (long t = 1; t <= n; ++t) {
    const double u = static_cast<double>(t) / n;
    const long kt = std::min(k_max, max_valid_lag(t, n));
    double acc = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      double w = terms[i].w(u);
      if (w == 0.0) continue;
      double s = psi_re[i][0] * xh[static_cast<size_t>(t - 1)] *
                 xh[static_cast<size_t>(t - 1)];
      for (long k = 1; k <= kt; ++k) {
        double d = xh[static_cast<size_t>(lag_index_plus(t, k) - 1)] *
                   xh[static_cast<size_t>(lag_index_minus(t, k) - 1)];
        s += 2.0 * psi_re[i][static_cast<size_t>(k)] * d;
      }
      acc += w * s;
    }
    per_t[static_cast<size_t>(t - 1)] = acc;
  }
  return pairwise_sum(per_t) / (2.0 * kPi * n);
}

double theoretical_functional(const TvArmaModel& model, const Taper& taper,
                              const SpectralFunctional& phi,
                              const Quadrature& quad) {
  std::vector<double> ubreaks = model_u_breaks(model);
  for (double b : phi.u_breakpoints()) ubreaks.push_back(b);
  for (double b : taper_u_breaks(taper)) ubreaks.push_back(b);
  std::vector<double> lbreaks = phi.lambda_discontinuities();
  auto inner = [&](double u) {
    double h = taper(u);
    if (h == 0.0) return 0.0;
    double li = integrate_lambda(
        [&](double lam) { return phi(u, lam) * model.tv_spectral_density(u, lam); },
        lbreaks, quad.lambda_panels);
    return h * h * li;
  };
  return integrate_u(inner, ubreaks, quad.u_points);
}

double empirical_process(const Sample& sample, const Taper& taper,
                         const SpectralFunctional& phi, double theoretical) {
  return std::sqrt(static_cast<double>(sample.n)) *
         (spectral_mean_lag(sample, taper, phi) - theoretical);
}

double empirical_process(const Sample& sample, const Taper& taper,
                         const SpectralFunctional& phi,
                         const TvArmaModel& model, const Quadrature& quad) {
  return empirical_process(sample, taper, phi,
                           theoretical_functional(model, taper, phi, quad));
}

double clt_covariance(const SpectralFunctional& phi_j,
                      const SpectralFunctional& phi_k,
                      const TvArmaModel& model, const Taper& taper,
                      const Quadrature& quad) {
  std::vector<double> ubreaks = model_u_breaks(model);
  for (double b : phi_j.u_breakpoints()) ubreaks.push_back(b);
  for (double b : phi_k.u_breakpoints()) ubreaks.push_back(b);
  for (double b : taper_u_breaks(taper)) ubreaks.push_back(b);

  std::vector<double> lbreaks = phi_j.lambda_discontinuities();
  for (double b : phi_k.lambda_discontinuities()) {
    lbreaks.push_back(b);
    lbreaks.push_back(-b);
  }

  auto main_inner = [&](double u) {
    double h = taper(u);
    if (h == 0.0) return 0.0;
    double h4 = h * h * h * h;
    double li = integrate_lambda(
        [&](double lam) {
          double f = model.tv_spectral_density(u, lam);
          return phi_j(u, lam) * (phi_k(u, lam) + phi_k(u, -lam)) * f * f;
        },
        lbreaks, quad.lambda_panels);
    return h4 * li;
  };
  double term1 = 2.0 * kPi * integrate_u(main_inner, ubreaks, quad.u_points);

  double term2 = 0.0;
  if (model.kappa4() != 0.0) {
    auto k4_inner = [&](double u) {
      double h = taper(u);
      if (h == 0.0) return 0.0;
      double h4 = h * h * h * h;
      double gj = integrate_lambda(
          [&](double lam) {
            return phi_j(u, lam) * model.tv_spectral_density(u, lam);
          },
          phi_j.lambda_discontinuities(), quad.lambda_panels);
      double gk = integrate_lambda(
          [&](double lam) {
            return phi_k(u, lam) * model.tv_spectral_density(u, lam);
          },
          phi_k.lambda_discontinuities(), quad.lambda_panels);
      return h4 * gj * gk;
    };
    term2 = model.kappa4() * integrate_u(k4_inner, ubreaks, quad.u_points);
  }
  return term1 + term2;
}

double expected_spectral_mean(const TvArmaModel& model, const Taper& taper,
                              const SpectralFunctional& phi, long n,
                              double coeff_tol) {
  model.require_valid();
  const int jmax = model.truncation_lag(coeff_tol);
  // Cache a_{t,n}(.) for every time index appearing in a lag product.
  std::vector<std::vector<double>> A(static_cast<size_t>(n + 1));
  for (long s = 1; s <= n; ++s)
    A[static_cast<size_t>(s)] = model.transfer_coefficients(s, n, jmax);
  auto cov = [&](long s, long r) {
    // cov(X_s, X_r) = sum_m a_{s,n}(m + s - r) a_{r,n}(m), s >= r.
    if (s < r) std::swap(s, r);
    long lag = s - r;
    if (lag > jmax) return 0.0;
    const auto& as = A[static_cast<size_t>(s)];
    const auto& ar = A[static_cast<size_t>(r)];
    double c = 0.0;
    for (long m = 0; m + lag <= jmax; ++m)
      c += as[static_cast<size_t>(m + lag)] * ar[static_cast<size_t>(m)];
    return c;
  };

  std::vector<double> h = taper.values(n);
  long k_cap = n - 1;
  if (phi.summable_coeffs()) k_cap = std::min(k_cap, phi.max_lag());

  const auto& terms = phi.terms();
  std::vector<std::vector<double>> psi_re(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    psi_re[i].resize(static_cast<size_t>(k_cap + 1));
    for (long k = 0; k <= k_cap; ++k)
      psi_re[i][static_cast<size_t>(k)] =
          terms[i].psi.fourier_coeff(k).real();
  }

  std::vector<double> per_t(static_cast<size_t>(n));
  for (long t = 1; t <= n; ++t) {
    const double u = static_cast<double>(t) / n;
    const long kt = std::min(k_cap, max_valid_lag(t, n));
    double acc = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      double w = terms[i].w(u);
      if (w == 0.0) continue;
      double ht = h[static_cast<size_t>(t - 1)];
      double s = psi_re[i][0] * ht * ht * cov(t, t);
      for (long k = 1; k <= kt; ++k) {
        long tp = lag_index_plus(t, k), tm = lag_index_minus(t, k);
        double hh = h[static_cast<size_t>(tp - 1)] * h[static_cast<size_t>(tm - 1)];
        s += 2.0 * psi_re[i][static_cast<size_t>(k)] * hh * cov(tp, tm);
      }
      acc += w * s;
    }
    per_t[static_cast<size_t>(t - 1)] = acc;
  }
  return pairwise_sum(per_t) / (2.0 * kPi * n);
}

}  // namespace locspec
