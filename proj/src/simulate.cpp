#include "locspec/simulate.hpp"

#include <stdexcept>

namespace locspec {

namespace {
// Innovations are indexed by absolute time t; shift into the counter domain
// so burn-in times (t <= 0) stay representable.
constexpr std::int64_t kCounterOffset = 1LL << 20;
}  // namespace

double innovation(const TvArmaModel& model, std::uint64_t seed, long t) {
  CounterRng rng(seed, /*stream=*/0);
  std::uint64_t c = static_cast<std::uint64_t>(t + kCounterOffset);
  return model.innovation() == Innovation::Gaussian
             ? rng.normal(c)
             : rng.standardized_uniform(c);
}

Sample simulate(const TvArmaModel& model, long n, std::uint64_t seed,
                long burn_in) {
  if (n <= 0) throw std::invalid_argument("simulate: n must be positive");
  if (burn_in < 0) burn_in = default_burn_in(model);
  model.require_valid();

  const int p = model.p(), q = model.q();
  const long start = 1 - burn_in;
  if (start <= -kCounterOffset + q)
    throw std::invalid_argument("simulate: burn_in too large");

  const double dn = static_cast<double>(n);
  // eps cache covering t = start - q .. n.
  std::vector<double> eps(static_cast<size_t>(n - (start - q) + 1));
  auto eps_at = [&](long t) -> double {
    return eps[static_cast<size_t>(t - (start - q))];
  };
  for (long t = start - q; t <= n; ++t)
    eps[static_cast<size_t>(t - (start - q))] = innovation(model, seed, t);

  std::vector<double> x(static_cast<size_t>(n - start + 1), 0.0);
  auto x_at = [&](long t) -> double {
    return t < start ? 0.0 : x[static_cast<size_t>(t - start)];
  };
  for (long t = start; t <= n; ++t) {
    double u = static_cast<double>(t) / dn;
    double rhs = model.sigma()(u) * eps_at(t);
    for (int k = 1; k <= q; ++k)
      rhs += model.beta()[k - 1](u) *
             model.sigma()(static_cast<double>(t - k) / dn) * eps_at(t - k);
    for (int j = 1; j <= p; ++j) rhs -= model.alpha()[j - 1](u) * x_at(t - j);
    x[static_cast<size_t>(t - start)] = rhs;
  }

  Sample s;
  s.n = n;
  s.seed = seed;
  s.burn_in = burn_in;
  s.values.assign(x.end() - n, x.end());
  return s;
}

}  // namespace locspec
