#pragma once

#include <cmath>
#include <cstdint>

namespace locspec {

// Counter-based RNG: every draw is a pure function of (seed, stream, counter),
// so replicated simulations can run on independent streams concurrently and
// still reproduce bit-for-bit regardless of worker count.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Uniform on (0, 1).
  double uniform(std::uint64_t counter) const {
    std::uint64_t x = mix(counter);
    // 53 mantissa bits, shifted into (0,1) so log/inverse-cdf never see 0.
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via inverse cdf (Acklam's rational approximation plus
  // one Halley refinement; absolute error below 1e-15).
  double normal(std::uint64_t counter) const {
    return inverse_normal_cdf(uniform(counter));
  }

  // Mean 0, variance 1, support [-sqrt(3), sqrt(3)]; fourth cumulant -1.2.
  double standardized_uniform(std::uint64_t counter) const {
    return (2.0 * uniform(counter) - 1.0) * 1.7320508075688772;
  }

  static double inverse_normal_cdf(double p);

 private:
  std::uint64_t mix(std::uint64_t counter) const {
    std::uint64_t x = counter + 0x9e3779b97f4a7c15ULL * (stream_ + 1);
    x ^= seed_ + 0x2545f4914f6cdd1dULL;
    x = splitmix(x);
    x = splitmix(x ^ seed_);
    return splitmix(x ^ stream_);
  }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
};

inline double CounterRng::inverse_normal_cdf(double p) {
  // Acklam's algorithm.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step against erfc.
  double e = 0.5 * std::erfc(-x / 1.4142135623730951) - p;
  double u = e * 2.5066282746310002 * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace locspec
