// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.
//
// Pareto boundary of the achievable rate region. A rate profile fixes the
// share of a sum-rate target carried by each stream; the largest feasible
// target along that ray is found by bisection, where each candidate target
// reduces to a small linear feasibility problem per decoding order (the
// SINR-shaped bounds linearize exactly at a fixed rate target).

#ifndef CANOMA_PARETO_HPP
#define CANOMA_PARETO_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "canoma/caching.hpp"
#include "canoma/common.hpp"
#include "canoma/linprog.hpp"
#include "canoma/rate_region.hpp"

namespace canoma {

/// Share of the sum-rate target assigned to each stream; shares are
/// nonnegative and sum to one. Streams a cache case does not transmit must
/// carry zero weight.
struct RateProfile {
  double i1 = 0.0;
  double i2 = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;

  double sum() const { return i1 + i2 + j1 + j2; }
  std::array<double, 4> as_array() const { return {i1, i2, j1, j2}; }

  void validate(CacheCase c) const {
    if (i1 < 0 || i2 < 0 || j1 < 0 || j2 < 0 || std::fabs(sum() - 1.0) > 1e-9)
      throw std::invalid_argument("rate profile: weights must be >= 0 and sum to 1");
    const bool i1_allowed = (c == CacheCase::I || c == CacheCase::III);
    const bool j1_allowed = (c == CacheCase::I || c == CacheCase::II);
    if ((!i1_allowed && i1 != 0.0) || (!j1_allowed && j1 != 0.0))
      throw std::invalid_argument("rate profile: weight on a stream this cache case lacks");
  }
};

/// Halfspace coeff . p >= rhs over the power vector.
struct Halfspace {
  std::array<double, 4> coeff{};
  double rhs = 0.0;
};

/// Exact linearization of log2(1 + a.p / (b.p + 1)) >= c into
/// (a - (2^c - 1) b) . p >= 2^c - 1. For a noise floor other than 1, scale a
/// and b by 1/noise before calling (the fraction is invariant).
inline Halfspace linearize_constraint(const std::array<double, 4>& a,
                                      const std::array<double, 4>& b, double c) {
  if (c < 0.0) throw std::invalid_argument("linearize_constraint: target rate must be >= 0");
  const double m = std::exp2(c) - 1.0;
  Halfspace h;
  for (int s = 0; s < 4; ++s) h.coeff[s] = a[s] - m * b[s];
  h.rhs = m;
  return h;
}

namespace detail {

inline void push_ge(std::vector<lp::Constraint>& rows, const std::array<double, 4>& coeff,
                    double rhs) {
  // a.x >= b  ->  -a.x <= -b
  rows.push_back({{-coeff[0], -coeff[1], -coeff[2], -coeff[3]}, -rhs});
}

inline void push_rate_row(std::vector<lp::Constraint>& rows, const BoundTerm& term,
                          double target_rate) {
  if (target_rate <= 0.0) return;  // always satisfiable, skip
  std::array<double, 4> a{}, b{};
  for (int s = 0; s < 4; ++s) {
    a[s] = term.num[s] / term.noise;
    b[s] = term.den[s] / term.noise;
  }
  const Halfspace h = linearize_constraint(a, b, target_rate);
  push_ge(rows, h.coeff, h.rhs);
}

/// Power-region membership of an order as linear rows; strict inequalities
/// get a 1e-12 interiority margin (boundary points are recovered by the
/// adjacent closed region, whose bounds coincide there).
inline void push_region_rows(std::vector<lp::Constraint>& rows, const DecodingPlan& plan,
                             double alpha_i, double alpha_j) {
  const double gap = alpha_j - alpha_i;
  const double margin = 1e-12;
  switch (plan.order) {
    case kConventionalSicOrder:
    case 1:
      break;
    case 2:  // p_j2 - p_j1 > gap
      push_ge(rows, {0, 0, -1, 1}, gap + margin);
      break;
    case 3:  // p_i1 < gap
      rows.push_back({{1, 0, 0, 0}, gap - margin});
      break;
    case 4:
    case 5:  // p_i1 >= gap
      push_ge(rows, {1, 0, 0, 0}, gap);
      break;
    case 6:  // p_i1 < p_j1 + gap
      rows.push_back({{1, 0, -1, 0}, gap - margin});
      break;
    case 7:
    case 8:  // p_i1 >= p_j1 + gap
      push_ge(rows, {1, 0, -1, 0}, gap);
      break;
    default:
      throw std::invalid_argument("push_region_rows: unknown decoding order");
  }
  if (plan.order == 7) {
    if (plan.delta)  // p_i2 > p_i1 - p_j1 - gap
      push_ge(rows, {-1, 1, 1, 0}, -gap + margin);
    else  // p_i2 <= p_i1 - p_j1 - gap
      rows.push_back({{-1, 1, 1, 0}, -gap});
  }
}

}  // namespace detail

/// Linear feasibility subproblem: is there an allocation within budget whose
/// bounds under `plan` carry at least share nu_ks of `r_sigma` per stream
/// (and the UE joint shares where the order has a joint bound)? Streams
/// listed in `pinned_zero` (beyond the ones the cache case already lacks)
/// are forced to zero power.
inline std::optional<PowerAlloc> feasible_power_for_target(
    CacheCase cache_case, const DecodingPlan& plan, const RateProfile& nu, double r_sigma,
    double alpha_i, double alpha_j, double budget,
    const std::array<bool, 4>* pinned_zero = nullptr) {
  if (r_sigma < 0.0) throw std::invalid_argument("feasible_power_for_target: negative target");
  const OrderBoundSet bounds = order_bound_set(plan.order, plan.delta, alpha_i, alpha_j);

  std::vector<lp::Constraint> rows;
  rows.push_back({{1, 1, 1, 1}, budget});

  const auto w = nu.as_array();
  const std::array<const BoundTerm*, 4> stream_bounds{&bounds.i1, &bounds.i2, &bounds.j1,
                                                      &bounds.j2};
  for (int s = 0; s < 4; ++s) detail::push_rate_row(rows, *stream_bounds[s], w[s] * r_sigma);
  if (bounds.i12) detail::push_rate_row(rows, *bounds.i12, (w[0] + w[1]) * r_sigma);
  if (bounds.j12) detail::push_rate_row(rows, *bounds.j12, (w[2] + w[3]) * r_sigma);

  detail::push_region_rows(rows, plan, alpha_i, alpha_j);

  // Streams the cache case does not transmit are pinned to zero power.
  std::array<bool, 4> zero{};
  if (pinned_zero) zero = *pinned_zero;
  if (cache_case == CacheCase::II || cache_case == CacheCase::IV) zero[0] = true;
  if (cache_case == CacheCase::III || cache_case == CacheCase::IV) zero[2] = true;
  for (int s = 0; s < 4; ++s)
    if (zero[s]) {
      lp::Constraint pin{{0, 0, 0, 0}, 0.0};
      pin.coeffs[s] = 1.0;
      rows.push_back(std::move(pin));
    }

  const auto x = lp::find_feasible_point(4, std::move(rows));
  if (!x) return std::nullopt;
  return PowerAlloc{(*x)[0], (*x)[1], (*x)[2], (*x)[3]};
}

/// One Pareto-optimal boundary rate tuple.
struct ParetoPoint {
  double r_sigma = 0.0;  // bps/Hz
  RateProfile profile;
  RateAlloc rates;
  PowerAlloc powers;
  DecodingPlan plan;
};

/// Maximizes the sum-rate target along the profile's ray by bisection
/// between 0 and the two-user single-link outer bound. When several orders
/// are feasible at the final target, the lowest (order, delta) is reported.
inline ParetoPoint solve_boundary_point(CacheCase cache_case, const RateProfile& nu,
                                        double alpha_i, double alpha_j, double budget,
                                        double tol = 1e-6) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_boundary_point: tolerance");
  if (!(alpha_i > 0.0) || !(alpha_j > 0.0) || alpha_i > alpha_j + kAlphaTieTol)
    throw std::invalid_argument("solve_boundary_point: need 0 < alpha_i <= alpha_j");
  nu.validate(cache_case);

  const std::vector<DecodingPlan> plans = candidate_plans(cache_case, /*with_branches=*/false);
  const auto probe = [&](double r) -> std::optional<std::pair<PowerAlloc, DecodingPlan>> {
    for (const DecodingPlan& plan : plans) {
      const auto p = feasible_power_for_target(cache_case, plan, nu, r, alpha_i, alpha_j, budget);
      if (p) return std::make_pair(*p, plan);
    }
    return std::nullopt;
  };

  ParetoPoint point;
  point.profile = nu;
  point.plan = plans.front();

  double lb = 0.0;
  double ub = capacity(budget / alpha_i) + capacity(budget / alpha_j);
  while (ub - lb >= tol) {
    const double mid = 0.5 * (lb + ub);
    const auto hit = probe(mid);
    if (hit) {
      lb = mid;
      point.powers = hit->first;
      point.plan = hit->second;
    } else {
      ub = mid;
    }
  }

  point.r_sigma = lb;
  point.rates.i1 = nu.i1 * lb;
  point.rates.i2 = nu.i2 * lb;
  point.rates.j1 = nu.j1 * lb;
  point.rates.j2 = nu.j2 * lb;

  // The LP already enforced the linearized bounds; re-check against the
  // nonlinear bound evaluation so a tolerance artifact cannot slip through.
  // (Bounds are evaluated directly: the LP owns region membership, and its
  // feasibility tolerance is looser than the region boundary tolerance.)
  if (lb > 0.0) {
    const OrderBoundSet b =
        order_bound_set(point.plan.order, point.plan.delta, alpha_i, alpha_j);
    const double slack = 1e-6 * std::max(1.0, lb);
    const PowerAlloc& p = point.powers;
    const double c_i12 = b.i12 ? b.i12->rate(p) : b.i1.rate(p) + b.i2.rate(p);
    const double c_j12 = b.j12 ? b.j12->rate(p) : b.j1.rate(p) + b.j2.rate(p);
    if (point.rates.i1 > b.i1.rate(p) + slack || point.rates.i2 > b.i2.rate(p) + slack ||
        point.rates.j1 > b.j1.rate(p) + slack || point.rates.j2 > b.j2.rate(p) + slack ||
        point.rates.i1 + point.rates.i2 > c_i12 + slack ||
        point.rates.j1 + point.rates.j2 > c_j12 + slack)
      throw std::logic_error("solve_boundary_point: allocation fails post-validation");
  }
  return point;
}

/// All lattice profiles with `divisions` steps on the simplex of streams the
/// case transmits.
inline std::vector<RateProfile> profile_lattice(CacheCase cache_case, int divisions) {
  if (divisions < 1) throw std::invalid_argument("profile_lattice: divisions must be >= 1");
  std::vector<int> free_streams;
  switch (cache_case) {
    case CacheCase::I: free_streams = {0, 1, 2, 3}; break;
    case CacheCase::II: free_streams = {1, 2, 3}; break;
    case CacheCase::III: free_streams = {0, 1, 3}; break;
    case CacheCase::IV: free_streams = {1, 3}; break;
  }
  std::vector<RateProfile> out;
  const int k = static_cast<int>(free_streams.size());
  std::vector<int> counts(k, 0);
  // Enumerate nonnegative integer compositions of `divisions` into k parts.
  const auto emit = [&]() {
    std::array<double, 4> w{0, 0, 0, 0};
    for (int s = 0; s < k; ++s) w[free_streams[s]] = static_cast<double>(counts[s]) / divisions;
    out.push_back(RateProfile{w[0], w[1], w[2], w[3]});
  };
  const auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == k - 1) {
      counts[pos] = remaining;
      emit();
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  recurse(recurse, 0, divisions);
  return out;
}

/// Boundary sweep over a profile lattice, sorted by the strong UE's total
/// rate. `divisions` controls the lattice resolution. Each point is Pareto
/// optimal in the four-stream rate space; profiles that load the interfering
/// stream can still aggregate to the interior of the two-user region, so
/// plotting code should pass the result through aggregate_frontier.
inline std::vector<ParetoPoint> pareto_sweep(CacheCase cache_case, double alpha_i,
                                             double alpha_j, double budget, int divisions,
                                             double tol = 1e-6) {
  std::vector<ParetoPoint> points;
  for (const RateProfile& nu : profile_lattice(cache_case, divisions))
    points.push_back(solve_boundary_point(cache_case, nu, alpha_i, alpha_j, budget, tol));
  std::sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    return a.rates.ue_i() < b.rates.ue_i();
  });
  return points;
}

/// Upper envelope of the sweep in per-UE aggregate rates (r_i, r_j): drops
/// every point another point dominates componentwise beyond `tol`.
inline std::vector<ParetoPoint> aggregate_frontier(const std::vector<ParetoPoint>& points,
                                                   double tol = 1e-6) {
  std::vector<ParetoPoint> keep;
  for (const ParetoPoint& cand : points) {
    bool dominated = false;
    for (const ParetoPoint& other : points) {
      if (other.rates.ue_i() >= cand.rates.ue_i() + tol &&
          other.rates.ue_j() >= cand.rates.ue_j() + tol) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep.push_back(cand);
  }
  return keep;
}

}  // namespace canoma

#endif  // CANOMA_PARETO_HPP
