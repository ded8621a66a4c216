// SPDX-License-Identifier: Apache-2.0
//
// Shared random-instance generators for the test suites.

#ifndef CANOMA_TESTS_GENERATORS_HPP
#define CANOMA_TESTS_GENERATORS_HPP

#include <array>
#include <cmath>

#include "canoma/caching.hpp"
#include "canoma/common.hpp"
#include "canoma/rng.hpp"

namespace canoma::testgen {

inline double uniform(RandomStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_u01();
}

inline double log_uniform(RandomStream& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

struct Channel {
  double alpha_i, alpha_j;
};

/// alpha_i log-uniform, ratio alpha_j/alpha_i log-uniform in [ratio_lo, ratio_hi].
inline Channel random_channel(RandomStream& rng, double ratio_lo = 2.0, double ratio_hi = 100.0) {
  const double ai = log_uniform(rng, 1e-4, 1e-1);
  return {ai, ai * log_uniform(rng, ratio_lo, ratio_hi)};
}

inline PowerAlloc random_power(RandomStream& rng, double budget) {
  // Dirichlet-ish split of a random fraction of the budget.
  std::array<double, 4> w{};
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(rng.next_u01());
    sum += x;
  }
  const double used = budget * uniform(rng, 0.05, 1.0);
  return {used * w[0] / sum, used * w[1] / sum, used * w[2] / sum, used * w[3] / sum};
}

inline CacheSpec random_cache_spec(RandomStream& rng, double volume_scale = 4e9) {
  CacheSpec s;
  s.c_ia = uniform(rng, 0.0, 1.0);
  s.c_ib = uniform(rng, 0.0, 1.0);
  s.c_ja = uniform(rng, 0.0, 1.0);
  s.c_jb = uniform(rng, 0.0, 1.0);
  s.v_a_bits = volume_scale * log_uniform(rng, 0.25, 4.0);
  s.v_b_bits = volume_scale * log_uniform(rng, 0.25, 4.0);
  return s;
}

/// Cache spec guaranteed to classify as Case I with every subfile nonempty.
inline CacheSpec case_i_cache_spec(RandomStream& rng, double volume_scale = 4e9) {
  CacheSpec s;
  s.c_ia = uniform(rng, 0.0, 0.4);
  s.c_ja = uniform(rng, s.c_ia + 0.1, 0.9);
  s.c_jb = uniform(rng, 0.0, 0.4);
  s.c_ib = uniform(rng, s.c_jb + 0.1, 0.9);
  s.v_a_bits = volume_scale * log_uniform(rng, 0.25, 4.0);
  s.v_b_bits = volume_scale * log_uniform(rng, 0.25, 4.0);
  return s;
}

}  // namespace canoma::testgen

#endif  // CANOMA_TESTS_GENERATORS_HPP
