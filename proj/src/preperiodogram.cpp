#include "locspec/preperiodogram.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace locspec {

std::vector<double> tapered_values(const Sample& sample, const Taper& taper) {
  std::vector<double> xh = sample.values;
  if (!taper.is_none()) {
    std::vector<double> h = taper.values(sample.n);
    for (std::size_t i = 0; i < xh.size(); ++i) xh[i] *= h[i];
  }
  return xh;
}

long max_valid_lag(long t, long n) {
  long k = 0;
  while (lag_index_plus(t, k + 1) <= n && lag_index_minus(t, k + 1) >= 1) ++k;
  return k;
}

std::vector<double> pre_periodogram(const Sample& sample, const Taper& taper,
                                    long t, const FrequencyGrid& grid) {
  if (t < 1 || t > sample.n)
    throw std::out_of_range("pre_periodogram: t out of 1..n");
  std::vector<double> xh = tapered_values(sample, taper);
  const long kmax = max_valid_lag(t, sample.n);
  std::vector<double> d(static_cast<size_t>(kmax + 1));
  for (long k = 0; k <= kmax; ++k)
    d[static_cast<size_t>(k)] = xh[static_cast<size_t>(lag_index_plus(t, k) - 1)] *
                                xh[static_cast<size_t>(lag_index_minus(t, k) - 1)];
  std::vector<double> out(grid.nodes.size());
  const double inv2pi = 1.0 / (2.0 * M_PI);
  for (std::size_t m = 0; m < grid.nodes.size(); ++m) {
    double lam = grid.nodes[m];
    double s = d[0];
    for (long k = 1; k <= kmax; ++k)
      s += 2.0 * d[static_cast<size_t>(k)] * std::cos(lam * k);
    out[m] = s * inv2pi;
  }
  return out;
}

std::vector<double> classical_periodogram(const Sample& sample,
                                          const FrequencyGrid& grid) {
  std::vector<double> out(grid.nodes.size());
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t m = 0; m < grid.nodes.size(); ++m) {
    std::complex<double> s(0.0, 0.0);
    for (long t = 1; t <= sample.n; ++t)
      s += sample[t] * std::exp(-i * (grid.nodes[m] * static_cast<double>(t)));
    out[m] = std::norm(s) / (2.0 * M_PI * sample.n);
  }
  return out;
}

}  // namespace locspec
