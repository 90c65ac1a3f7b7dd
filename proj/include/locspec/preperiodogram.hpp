#pragma once

#include <vector>

#include "locspec/functional.hpp"
#include "locspec/simulate.hpp"

namespace locspec {

// Index pair [t + 1/2 + k/2], [t + 1/2 - k/2] of the lag product centered at
// t (floor convention), for k >= 0.
inline long lag_index_plus(long t, long k) { return t + (k + 1) / 2; }
inline long lag_index_minus(long t, long k) { return t - k / 2; }

// Tapered sample values h(t/n) * X_t.
std::vector<double> tapered_values(const Sample& sample, const Taper& taper);

// Largest k >= 0 with both lag indices inside 1..n.
long max_valid_lag(long t, long n);

// Pre-periodogram J_n(t/n, lambda) on the grid nodes. Real by the k <-> -k
// pairing; computed via the cosine form.
std::vector<double> pre_periodogram(const Sample& sample, const Taper& taper,
                                    long t, const FrequencyGrid& grid);

// Classical periodogram I_n(lambda) = |sum X_s exp(-i lambda s)|^2 / (2 pi n).
std::vector<double> classical_periodogram(const Sample& sample,
                                          const FrequencyGrid& grid);

}  // namespace locspec
