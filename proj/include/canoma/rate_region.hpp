// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.
//
// Achievable rate bounds for every joint CIC+SIC decoding order of the
// two-user cache-aided downlink. UE i (effective noise alpha_i) requests file
// A, UE j (alpha_j >= alpha_i) requests file B. Streams x_A1/x_B1 are the
// subfiles cached at the non-requesting UE and are removed there by CIC
// before any SIC step; x_A2/x_B2 are cached nowhere and interfere at both
// receivers until decoded.

#ifndef CANOMA_RATE_REGION_HPP
#define CANOMA_RATE_REGION_HPP

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "canoma/caching.hpp"
#include "canoma/common.hpp"

namespace canoma {

/// Boundary classification tolerance for the power-region predicates: strict
/// inequalities are treated as closed within this margin, so boundary points
/// belong to both adjacent regions (their bounds coincide in the limit).
constexpr double kRegionTol = 1e-12;

/// One SINR-shaped bound capacity(num.p / (den.p + noise)); num/den are
/// 0/1 masks over the stream powers (i1, i2, j1, j2).
struct BoundTerm {
  std::array<double, 4> num{};
  std::array<double, 4> den{};
  double noise = 0.0;

  double sinr(const PowerAlloc& p) const {
    const auto pa = p.as_array();
    double n = 0.0, d = noise;
    for (int s = 0; s < 4; ++s) {
      n += num[s] * pa[s];
      d += den[s] * pa[s];
    }
    return n / d;
  }
  double rate(const PowerAlloc& p) const { return capacity(sinr(p)); }
};

/// The C2/C3 bound set of one decoding order: four per-stream bounds plus
/// the joint two-stream bound where the order decodes a UE's streams over a
/// common residual channel.
struct OrderBoundSet {
  BoundTerm i1, i2, j1, j2;
  std::optional<BoundTerm> i12, j12;
};

namespace detail {

constexpr std::array<double, 4> kNone{0, 0, 0, 0};
constexpr std::array<double, 4> kPi1{1, 0, 0, 0};
constexpr std::array<double, 4> kPi2{0, 1, 0, 0};
constexpr std::array<double, 4> kPj1{0, 0, 1, 0};
constexpr std::array<double, 4> kPj2{0, 0, 0, 1};
constexpr std::array<double, 4> kPi2Pj2{0, 1, 0, 1};
constexpr std::array<double, 4> kPi1Pj2{1, 0, 0, 1};
constexpr std::array<double, 4> kPi2Pj1{0, 1, 1, 0};
constexpr std::array<double, 4> kPi1Pi2{1, 1, 0, 0};
constexpr std::array<double, 4> kPj1Pj2{0, 0, 1, 1};

}  // namespace detail

/// Indicator deciding, for order 7, whether UE i can strip x_B2 before
/// decoding x_A1: 1 when p_i2 > p_i1 - p_j1 - (alpha_j - alpha_i).
inline int delta_indicator(const PowerAlloc& p, double alpha_i, double alpha_j) {
  return p.i2 > p.i1 - p.j1 - (alpha_j - alpha_i) ? 1 : 0;
}

/// True when the indicator sits within kRegionTol of its switching surface,
/// in which case both delta hypotheses are admissible.
inline bool delta_on_boundary(const PowerAlloc& p, double alpha_i, double alpha_j) {
  return std::fabs(p.i2 - (p.i1 - p.j1 - (alpha_j - alpha_i))) <= kRegionTol;
}

/// Admissible power region of a decoding order. Order 1 places no
/// restriction beyond the budget; the others partition the power space by
/// which receiver can satisfy the SIC decodability inequality first.
inline bool power_region_contains(int order, const PowerAlloc& p, double alpha_i,
                                  double alpha_j) {
  const double gap = alpha_j - alpha_i;
  switch (order) {
    case kConventionalSicOrder:
    case 1:
      return true;
    case 2:
      return p.j2 - p.j1 >= gap - kRegionTol;
    case 3:
      return p.i1 <= gap + kRegionTol;
    case 4:
    case 5:
      return p.i1 >= gap - kRegionTol;
    case 6:
      return p.i1 <= p.j1 + gap + kRegionTol;
    case 7:
    case 8:
      return p.i1 >= p.j1 + gap - kRegionTol;
    default:
      throw std::invalid_argument("power_region_contains: unknown decoding order");
  }
}

// clang-format off
/// Bound set of one decoding order. Decode sequences per order:
///   1: i: xA1, xB2, xA2            j: (xB1, xB2) jointly
///   2: i: xA1, xA2                 j: xA2, xB2, xB1
///   3: i: xB2, (xA1, xA2) jointly  j: xB1, xB2
///   4: i: xA2, xA1                 j: xB1, xA2, xB2
///   5: i: xA1, xB2, xA2            j: xB1, xB2
///   6: i: xB2, (xA1, xA2) jointly  j: xB2, xB1
///   7: i: xA2 then xA1 (delta=1) or xA2, xB2, xA1 (delta=0)
///                                  j: xB2, xB1
///   8: i: xA2, xA1                 j: xA2, (xB1, xB2) jointly
///   0: i: xB2, xA2                 j: xB2 treating xA2 as noise
// clang-format on
inline OrderBoundSet order_bound_set(int order, int delta, double alpha_i, double alpha_j) {
  using namespace detail;
  const double ai = alpha_i, aj = alpha_j;
  OrderBoundSet b;
  switch (order) {
    case 1:
      b.i1 = {kPi1, kPi2Pj2, ai};
      b.i2 = {kPi2, kNone, ai};
      b.j1 = {kPj1, kPi2, aj};
      b.j2 = {kPj2, kPi2, aj};
      b.j12 = BoundTerm{kPj1Pj2, kPi2, aj};
      break;
    case 2:
      b.i1 = {kPi1, kPi2Pj2, ai};
      b.i2 = {kPi2, kPj2, ai};
      b.j1 = {kPj1, kNone, aj};
      b.j2 = {kPj2, kPi2Pj1, aj};
      break;
    case 3:
      b.i1 = {kPi1, kNone, ai};
      b.i2 = {kPi2, kNone, ai};
      b.i12 = BoundTerm{kPi1Pi2, kNone, ai};
      b.j1 = {kPj1, kPi2Pj2, aj};
      b.j2 = {kPj2, kPi2, aj};
      break;
    case 4:
      b.i1 = {kPi1, kPj2, ai};
      b.i2 = {kPi2, kPi1Pj2, ai};
      b.j1 = {kPj1, kPi2Pj2, aj};
      b.j2 = {kPj2, kNone, aj};
      break;
    case 5:
      b.i1 = {kPi1, kPi2Pj2, ai};
      b.i2 = {kPi2, kNone, ai};
      b.j1 = {kPj1, kPi2Pj2, aj};
      b.j2 = {kPj2, kPi2, aj};
      break;
    case 6:
      b.i1 = {kPi1, kNone, ai};
      b.i2 = {kPi2, kNone, ai};
      b.i12 = BoundTerm{kPi1Pi2, kNone, ai};
      b.j1 = {kPj1, kPi2, aj};
      b.j2 = {kPj2, kPi2Pj1, aj};
      break;
    case 7:
      b.i1 = {kPi1, delta ? kPj2 : kNone, ai};
      b.i2 = {kPi2, kPi1Pj2, ai};
      b.j1 = {kPj1, kNone, aj};
      b.j2 = {kPj2, kPi2Pj1, aj};
      break;
    case 8:
      b.i1 = {kPi1, kPj2, ai};
      b.i2 = {kPi2, kPi1Pj2, ai};
      b.j1 = {kPj1, kNone, aj};
      b.j2 = {kPj2, kNone, aj};
      b.j12 = BoundTerm{kPj1Pj2, kNone, aj};
      break;
    case kConventionalSicOrder:
      b.i1 = {kNone, kNone, ai};
      b.i2 = {kPi2, kNone, ai};
      b.j1 = {kNone, kNone, aj};
      b.j2 = {kPj2, kPi2, aj};
      break;
    default:
      throw std::invalid_argument("order_bound_set: unknown decoding order");
  }
  return b;
}

/// Per-stream and per-UE rate bounds, bps/Hz. When an order has no joint
/// bound for a UE, the UE's sum bound is the sum of its stream bounds.
struct RateBounds {
  double c_i1 = 0.0, c_i2 = 0.0, c_j1 = 0.0, c_j2 = 0.0;
  double c_i12 = 0.0, c_j12 = 0.0;
};

/// Evaluates the bounds of `plan` at power vector `p`. Throws
/// infeasible_order_error when p lies outside the order's power region and
/// std::invalid_argument when a delta inconsistent with the powers is forced
/// for order 7.
inline RateBounds rate_bounds(const DecodingPlan& plan, const PowerAlloc& p, double alpha_i,
                              double alpha_j) {
  if (!power_region_contains(plan.order, p, alpha_i, alpha_j))
    throw infeasible_order_error("rate_bounds: power vector outside the order's region");
  if (plan.order == 7 && plan.delta != delta_indicator(p, alpha_i, alpha_j) &&
      !delta_on_boundary(p, alpha_i, alpha_j))
    throw std::invalid_argument("rate_bounds: delta inconsistent with the power allocation");
  const OrderBoundSet b = order_bound_set(plan.order, plan.delta, alpha_i, alpha_j);
  RateBounds r;
  r.c_i1 = b.i1.rate(p);
  r.c_i2 = b.i2.rate(p);
  r.c_j1 = b.j1.rate(p);
  r.c_j2 = b.j2.rate(p);
  r.c_i12 = b.i12 ? b.i12->rate(p) : r.c_i1 + r.c_i2;
  r.c_j12 = b.j12 ? b.j12->rate(p) : r.c_j1 + r.c_j2;
  return r;
}

/// Decoding orders available under each cache configuration. Case I admits
/// all eight split-stream orders; Case II (no x_A1) the orders where UE i
/// starts with x_A1, degenerate; Case III (no x_B1) the orders where UE j
/// starts with x_B1; Case IV only the conventional SIC plan.
inline std::vector<int> feasible_orders(CacheCase c) {
  switch (c) {
    case CacheCase::I: return {1, 2, 3, 4, 5, 6, 7, 8};
    case CacheCase::II: return {1, 2};
    case CacheCase::III: return {3, 4, 5};
    case CacheCase::IV: return {kConventionalSicOrder};
  }
  throw std::invalid_argument("feasible_orders: unknown cache case");
}

/// Orders with two dominant-face corner splits (braced rows of the
/// interference/power tables).
inline bool order_has_branches(int order) {
  return order == 1 || order == 3 || order == 6 || order == 8;
}

/// Enumerates candidate plans for a cache case in tie-break order (ascending
/// order index, first branch before second, delta 0 before 1). Branch
/// enumeration only matters for delivery optimization; region membership and
/// feasibility checks may pass `with_branches = false`.
inline std::vector<DecodingPlan> candidate_plans(CacheCase c, bool with_branches) {
  std::vector<DecodingPlan> plans;
  for (int order : feasible_orders(c)) {
    if (order == 7) {
      plans.push_back({7, Branch::first, 0});
      plans.push_back({7, Branch::first, 1});
    } else if (with_branches && order_has_branches(order)) {
      plans.push_back({order, Branch::first, 0});
      plans.push_back({order, Branch::second, 0});
    } else {
      plans.push_back({order, Branch::first, 0});
    }
  }
  return plans;
}

/// Membership test: returns a plan whose bounds dominate the requested rates
/// at power vector p, or nullopt. Rates on streams a case does not transmit
/// must be (numerically) zero.
inline std::optional<DecodingPlan> region_contains(CacheCase c, const PowerAlloc& p,
                                                   const RateAlloc& r, double alpha_i,
                                                   double alpha_j, double budget) {
  const double slack = 1e-9;
  if (p.total() > budget * (1.0 + 1e-12) + slack) return std::nullopt;
  const bool i1_allowed = (c == CacheCase::I || c == CacheCase::III);
  const bool j1_allowed = (c == CacheCase::I || c == CacheCase::II);
  if ((!i1_allowed && r.i1 > slack) || (!j1_allowed && r.j1 > slack)) return std::nullopt;

  for (const DecodingPlan& plan : candidate_plans(c, /*with_branches=*/false)) {
    if (!power_region_contains(plan.order, p, alpha_i, alpha_j)) continue;
    if (plan.order == 7 && plan.delta != delta_indicator(p, alpha_i, alpha_j) &&
        !delta_on_boundary(p, alpha_i, alpha_j))
      continue;
    const RateBounds b = rate_bounds(plan, p, alpha_i, alpha_j);
    const auto ok = [slack](double rate, double bound) { return rate <= bound + slack; };
    if (ok(r.i1, b.c_i1) && ok(r.i2, b.c_i2) && ok(r.j1, b.c_j1) && ok(r.j2, b.c_j2) &&
        ok(r.i1 + r.i2, b.c_i12) && ok(r.j1 + r.j2, b.c_j12))
      return plan;
  }
  return std::nullopt;
}

}  // namespace canoma

#endif  // CANOMA_RATE_REGION_HPP
