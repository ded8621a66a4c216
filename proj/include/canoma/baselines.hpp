// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.
//
// Reference schemes evaluated on the same instances as the cache-aided
// solver: time-division OMA (cache hits offloaded, no interference) and
// conventional power-domain NOMA with or without cache offloading.

#ifndef CANOMA_BASELINES_HPP
#define CANOMA_BASELINES_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "canoma/caching.hpp"
#include "canoma/common.hpp"
#include "canoma/delivery.hpp"

namespace canoma {

/// Time-division solution: tau is UE i's time share. With normalized loads
/// mu_k = beta_k / (BW * capacity(P / alpha_k)) the cost tau -> mu_i / tau +
/// mu_j / (1 - tau) is minimized at tau = sqrt(mu_i) / (sqrt(mu_i) +
/// sqrt(mu_j)), giving (sqrt(mu_i) + sqrt(mu_j))^2 seconds.
struct OmaSolution {
  double tau = 1.0;
  double t_s = 0.0;
  double mu_i_s = 0.0;
  double mu_j_s = 0.0;
};

inline OmaSolution oma_solve(double beta_i_bits, double beta_j_bits, double alpha_i,
                             double alpha_j, double budget, double bandwidth_hz) {
  if (beta_i_bits < 0.0 || beta_j_bits < 0.0)
    throw std::invalid_argument("oma_solve: loads must be nonnegative");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("oma_solve: bandwidth");
  OmaSolution s;
  if (beta_i_bits == 0.0 && beta_j_bits == 0.0) {
    s.tau = 1.0;
    s.t_s = 0.0;
    return s;
  }
  if (budget <= 0.0) {
    s.t_s = kInf;
    return s;
  }
  s.mu_i_s = beta_i_bits > 0.0 ? beta_i_bits / (bandwidth_hz * capacity(budget / alpha_i)) : 0.0;
  s.mu_j_s = beta_j_bits > 0.0 ? beta_j_bits / (bandwidth_hz * capacity(budget / alpha_j)) : 0.0;
  if (s.mu_j_s == 0.0) {  // analytic limit rather than 0/0
    s.tau = 1.0;
    s.t_s = s.mu_i_s;
  } else if (s.mu_i_s == 0.0) {
    s.tau = 0.0;
    s.t_s = s.mu_j_s;
  } else {
    const double si = std::sqrt(s.mu_i_s), sj = std::sqrt(s.mu_j_s);
    s.tau = si / (si + sj);
    s.t_s = (si + sj) * (si + sj);
  }
  return s;
}

/// Time-division cost at an arbitrary time share (for stationarity checks).
inline double oma_time_at(const OmaSolution& s, double tau) {
  if (!(tau > 0.0) || !(tau < 1.0)) throw std::domain_error("oma_time_at: tau in (0,1)");
  return s.mu_i_s / tau + s.mu_j_s / (1.0 - tau);
}

/// Conventional NOMA solution (one stream per UE).
struct NomaSolution {
  double p_i = 0.0;
  double p_j = 0.0;
  double r_i = 0.0;  // bps/Hz
  double r_j = 0.0;
  double t_s = 0.0;
};

/// Conventional NOMA delivery on file volumes v_a/v_b. With caching enabled
/// the requested cache hits are offloaded first (loads (1 - c_kf) * V_f);
/// without caching the full volumes are sent. Either way the rate region is
/// the same; only the loads change.
inline NomaSolution noma_solve(double v_a_bits, double v_b_bits, double alpha_i, double alpha_j,
                               double budget, double bandwidth_hz, bool with_cache,
                               const CacheSpec& cache = {}) {
  const double beta_i = with_cache ? (1.0 - cache.c_ia) * v_a_bits : v_a_bits;
  const double beta_j = with_cache ? (1.0 - cache.c_jb) * v_b_bits : v_b_bits;
  const DeliverySolution d =
      solve_case_iv(beta_i, beta_j, alpha_i, alpha_j, budget, bandwidth_hz);
  NomaSolution s;
  s.p_i = d.powers.i2;
  s.p_j = d.powers.j2;
  s.r_i = d.rates.i2;
  s.r_j = d.rates.j2;
  s.t_s = d.t_s;
  return s;
}

struct RatePair {
  double r_i = 0.0;
  double r_j = 0.0;
};

/// Boundary of the time-division rate region, sampled over the time share.
inline std::vector<RatePair> oma_rate_region(double alpha_i, double alpha_j, double budget,
                                             int samples) {
  if (samples < 2) throw std::invalid_argument("oma_rate_region: need >= 2 samples");
  const double ci = capacity(budget / alpha_i), cj = capacity(budget / alpha_j);
  std::vector<RatePair> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double tau = static_cast<double>(k) / (samples - 1);
    out.push_back({tau * ci, (1.0 - tau) * cj});
  }
  return out;
}

/// Boundary of the conventional NOMA rate region, sampled over the strong
/// UE's power share (the weak UE absorbs the remainder plus interference).
inline std::vector<RatePair> noma_rate_region(double alpha_i, double alpha_j, double budget,
                                              int samples) {
  if (samples < 2) throw std::invalid_argument("noma_rate_region: need >= 2 samples");
  std::vector<RatePair> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double p_i = budget * static_cast<double>(k) / (samples - 1);
    out.push_back({capacity(p_i / alpha_i), capacity((budget - p_i) / (p_i + alpha_j))});
  }
  return out;
}

}  // namespace canoma

#endif  // CANOMA_BASELINES_HPP
