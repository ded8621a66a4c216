// SPDX-License-Identifier: Apache-2.0
//
// Test-only brute-force verifiers. Everything here is written directly from
// the per-order decode-sequence inequalities, independently of the library's
// bound tables, so agreement between the two is a meaningful check. Not part
// of the shipped library.

#ifndef CANOMA_TESTS_ORACLE_HPP
#define CANOMA_TESTS_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "canoma/caching.hpp"
#include "canoma/common.hpp"

namespace canoma::oracle {

inline double cap(double s) { return std::log2(1.0 + s); }

/// Rate bounds of one decoding order, transcribed literally per order:
/// each bound is written out as an explicit SINR expression.
struct OracleBounds {
  double i1 = 0.0, i2 = 0.0, j1 = 0.0, j2 = 0.0;
  double i12 = 0.0, j12 = 0.0;  // joint bounds; sum of singles when absent
};

inline std::optional<OracleBounds> oracle_bounds(int order, int delta, const PowerAlloc& p,
                                                 double ai, double aj) {
  const double gap = aj - ai;
  OracleBounds b;
  const double tol = 1e-12;
  switch (order) {
    case 1:
      b.i1 = cap(p.i1 / (p.i2 + p.j2 + ai));
      b.i2 = cap(p.i2 / ai);
      b.j1 = cap(p.j1 / (p.i2 + aj));
      b.j2 = cap(p.j2 / (p.i2 + aj));
      b.i12 = b.i1 + b.i2;
      b.j12 = cap((p.j1 + p.j2) / (p.i2 + aj));
      return b;
    case 2:
      if (!(p.j2 - p.j1 >= gap - tol)) return std::nullopt;
      b.i1 = cap(p.i1 / (p.i2 + p.j2 + ai));
      b.i2 = cap(p.i2 / (p.j2 + ai));
      b.j1 = cap(p.j1 / aj);
      b.j2 = cap(p.j2 / (p.i2 + p.j1 + aj));
      b.i12 = b.i1 + b.i2;
      b.j12 = b.j1 + b.j2;
      return b;
    case 3:
      if (!(p.i1 <= gap + tol)) return std::nullopt;
      b.i1 = cap(p.i1 / ai);
      b.i2 = cap(p.i2 / ai);
      b.j1 = cap(p.j1 / (p.i2 + p.j2 + aj));
      b.j2 = cap(p.j2 / (p.i2 + aj));
      b.i12 = cap((p.i1 + p.i2) / ai);
      b.j12 = b.j1 + b.j2;
      return b;
    case 4:
      if (!(p.i1 >= gap - tol)) return std::nullopt;
      b.i1 = cap(p.i1 / (p.j2 + ai));
      b.i2 = cap(p.i2 / (p.i1 + p.j2 + ai));
      b.j1 = cap(p.j1 / (p.i2 + p.j2 + aj));
      b.j2 = cap(p.j2 / aj);
      b.i12 = b.i1 + b.i2;
      b.j12 = b.j1 + b.j2;
      return b;
    case 5:
      if (!(p.i1 >= gap - tol)) return std::nullopt;
      b.i1 = cap(p.i1 / (p.i2 + p.j2 + ai));
      b.i2 = cap(p.i2 / ai);
      b.j1 = cap(p.j1 / (p.i2 + p.j2 + aj));
      b.j2 = cap(p.j2 / (p.i2 + aj));
      b.i12 = b.i1 + b.i2;
      b.j12 = b.j1 + b.j2;
      return b;
    case 6:
      if (!(p.i1 <= p.j1 + gap + tol)) return std::nullopt;
      b.i1 = cap(p.i1 / ai);
      b.i2 = cap(p.i2 / ai);
      b.j1 = cap(p.j1 / (p.i2 + aj));
      b.j2 = cap(p.j2 / (p.j1 + p.i2 + aj));
      b.i12 = cap((p.i1 + p.i2) / ai);
      b.j12 = b.j1 + b.j2;
      return b;
    case 7: {
      if (!(p.i1 >= p.j1 + gap - tol)) return std::nullopt;
      const double threshold = p.i1 - p.j1 - gap;
      const bool on_boundary = std::fabs(p.i2 - threshold) <= tol;
      const int indicated = p.i2 > threshold ? 1 : 0;
      if (delta != indicated && !on_boundary) return std::nullopt;
      b.i1 = cap(p.i1 / (ai + (delta ? p.j2 : 0.0)));
      b.i2 = cap(p.i2 / (p.i1 + p.j2 + ai));
      b.j1 = cap(p.j1 / aj);
      b.j2 = cap(p.j2 / (p.i2 + p.j1 + aj));
      b.i12 = b.i1 + b.i2;
      b.j12 = b.j1 + b.j2;
      return b;
    }
    case 8:
      if (!(p.i1 >= p.j1 + gap - tol)) return std::nullopt;
      b.i1 = cap(p.i1 / (p.j2 + ai));
      b.i2 = cap(p.i2 / (p.i1 + p.j2 + ai));
      b.j1 = cap(p.j1 / aj);
      b.j2 = cap(p.j2 / aj);
      b.i12 = b.i1 + b.i2;
      b.j12 = cap((p.j1 + p.j2) / aj);
      return b;
    case kConventionalSicOrder:
      b.i2 = cap(p.i2 / ai);
      b.j2 = cap(p.j2 / (p.i2 + aj));
      b.i12 = b.i2;
      b.j12 = b.j2;
      return b;
    default:
      return std::nullopt;
  }
}

inline std::vector<std::pair<int, int>> oracle_plans(CacheCase c) {
  switch (c) {
    case CacheCase::I:
      return {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {7, 1}, {8, 0}};
    case CacheCase::II: return {{1, 0}, {2, 0}};
    case CacheCase::III: return {{3, 0}, {4, 0}, {5, 0}};
    case CacheCase::IV: return {{kConventionalSicOrder, 0}};
  }
  return {};
}

/// Ground-truth region membership: exhaustive check of every decode plan.
inline bool oracle_region_contains(CacheCase c, const PowerAlloc& p, const RateAlloc& r,
                                   double ai, double aj, double budget) {
  const double slack = 1e-9;
  if (p.total() > budget * (1.0 + 1e-12) + slack) return false;
  const bool i1_allowed = (c == CacheCase::I || c == CacheCase::III);
  const bool j1_allowed = (c == CacheCase::I || c == CacheCase::II);
  if ((!i1_allowed && r.i1 > slack) || (!j1_allowed && r.j1 > slack)) return false;
  for (const auto& [order, delta] : oracle_plans(c)) {
    const auto b = oracle_bounds(order, delta, p, ai, aj);
    if (!b) continue;
    if (r.i1 <= b->i1 + slack && r.i2 <= b->i2 + slack && r.j1 <= b->j1 + slack &&
        r.j2 <= b->j2 + slack && r.i1 + r.i2 <= b->i12 + slack &&
        r.j1 + r.j2 <= b->j12 + slack)
      return true;
  }
  return false;
}

/// Best completion time at a fixed power vector: for each UE the largest t
/// with (t*beta_1, t*beta_2) inside the UE's bound polytope is the smallest
/// of the per-stream and joint ratios; the plan's time is 1/min over UEs.
inline double oracle_time_at(CacheCase c, const PowerAlloc& p,
                             const std::array<double, 4>& beta, double ai, double aj,
                             double bandwidth_hz) {
  double best = kInf;
  for (const auto& [order, delta] : oracle_plans(c)) {
    const auto b = oracle_bounds(order, delta, p, ai, aj);
    if (!b) continue;
    double t_i = kInf, t_j = kInf;
    if (beta[0] > 0.0) t_i = std::min(t_i, b->i1 / beta[0]);
    if (beta[1] > 0.0) t_i = std::min(t_i, b->i2 / beta[1]);
    if (beta[0] + beta[1] > 0.0) t_i = std::min(t_i, b->i12 / (beta[0] + beta[1]));
    if (beta[2] > 0.0) t_j = std::min(t_j, b->j1 / beta[2]);
    if (beta[3] > 0.0) t_j = std::min(t_j, b->j2 / beta[3]);
    if (beta[2] + beta[3] > 0.0) t_j = std::min(t_j, b->j12 / (beta[2] + beta[3]));
    const double t = std::min(t_i, t_j);  // bits per second per unit volume
    if (t <= 0.0) continue;
    best = std::min(best, 1.0 / (t * bandwidth_hz));
  }
  return best;
}

/// Grid minimization of the delivery time over the full-power simplex
/// (optimal allocations spend the whole budget, so only the simplex face is
/// searched) with `steps` subdivisions per dimension.
inline double oracle_delivery_time(CacheCase c, const std::array<double, 4>& beta, double ai,
                                   double aj, double budget, double bandwidth_hz, int steps) {
  double best = kInf;
  for (int g1 = 0; g1 <= steps; ++g1)
    for (int g2 = 0; g2 + g1 <= steps; ++g2)
      for (int g3 = 0; g3 + g2 + g1 <= steps; ++g3) {
        const int g4 = steps - g1 - g2 - g3;
        const PowerAlloc p{budget * g1 / steps, budget * g2 / steps, budget * g3 / steps,
                           budget * g4 / steps};
        best = std::min(best, oracle_time_at(c, p, beta, ai, aj, bandwidth_hz));
      }
  return best;
}

/// Nearest full-power grid point to a reference allocation, keeping at least
/// one grid unit on every demanded stream so its rate stays positive.
inline PowerAlloc snap_to_grid(const PowerAlloc& ref, const std::array<double, 4>& beta,
                               double budget, int steps) {
  std::array<int, 4> g{};
  const auto pa = ref.as_array();
  int total = 0;
  for (int s = 0; s < 4; ++s) {
    g[s] = static_cast<int>(std::lround(pa[s] / budget * steps));
    if (beta[s] > 0.0) g[s] = std::max(g[s], 1);
    g[s] = std::min(g[s], steps);
    total += g[s];
  }
  while (total != steps) {
    // push the correction onto the largest adjustable coordinate
    int pick = -1;
    for (int s = 0; s < 4; ++s) {
      if (total > steps && g[s] <= (beta[s] > 0.0 ? 1 : 0)) continue;
      if (pick < 0 || g[s] > g[pick]) pick = s;
    }
    g[pick] += (total > steps) ? -1 : 1;
    total += (total > steps) ? -1 : 1;
  }
  return {budget * g[0] / steps, budget * g[1] / steps, budget * g[2] / steps,
          budget * g[3] / steps};
}

}  // namespace canoma::oracle

#endif  // CANOMA_TESTS_ORACLE_HPP
