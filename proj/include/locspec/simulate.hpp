#pragma once

#include <cstdint>
#include <vector>

#include "locspec/model.hpp"
#include "locspec/rng.hpp"

namespace locspec {

// A simulated path X_1..X_n. Deterministic given (model, n, seed, burn_in);
// the seed doubles as the RNG stream id so replications over seeds are
// independent counter-RNG streams.
struct Sample {
  long n = 0;
  std::vector<double> values;  // values[t-1] = X_{t,n}
  std::uint64_t seed = 0;
  long burn_in = 0;

  double operator[](long t) const { return values[static_cast<size_t>(t - 1)]; }
};

inline long default_burn_in(const TvArmaModel& model) {
  return 500 + 10 * model.p();
}

// Innovation eps_t of the stream used by simulate() (t may be negative
// during burn-in).
double innovation(const TvArmaModel& model, std::uint64_t seed, long t);

// Runs the tvARMA recursion from t = 1 - burn_in with curves frozen at
// u <= 0. burn_in < 0 selects the default 500 + 10 p.
Sample simulate(const TvArmaModel& model, long n, std::uint64_t seed,
                long burn_in = -1);

}  // namespace locspec
