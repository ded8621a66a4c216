// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.

#ifndef CANOMA_COMMON_HPP
#define CANOMA_COMMON_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace canoma {

/// AWGN capacity in bps/Hz for a given SINR (linear).
inline double capacity(double sinr) { return std::log2(1.0 + sinr); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

constexpr double kInf = std::numeric_limits<double>::infinity();

/// UE-strength comparisons treat effective noise variances within this
/// tolerance as a tie; ties keep the first-labeled UE as the strong one.
constexpr double kAlphaTieTol = 1e-12;

/// Transmit power per stream, watts. Streams are (i,1), (i,2), (j,1), (j,2):
/// UE i requests file A, UE j requests file B; stream 1 carries the subfile
/// cached at the other UE (cancelable there), stream 2 the subfile cached
/// nowhere.
struct PowerAlloc {
  double i1 = 0.0;
  double i2 = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;

  double total() const { return i1 + i2 + j1 + j2; }
  std::array<double, 4> as_array() const { return {i1, i2, j1, j2}; }
  static PowerAlloc from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
};

/// Per-stream delivery rates, bps/Hz. Same stream order as PowerAlloc.
struct RateAlloc {
  double i1 = 0.0;
  double i2 = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;

  double ue_i() const { return i1 + i2; }
  double ue_j() const { return j1 + j2; }
  std::array<double, 4> as_array() const { return {i1, i2, j1, j2}; }
};

/// Selector for decode sequences that admit two dominant-face corner splits
/// (orders 1, 3, 6, 8). For other orders it is ignored.
enum class Branch : std::uint8_t { first, second };

inline const char* branch_name(Branch b) { return b == Branch::first ? "first" : "second"; }

/// One decoding order: `order` indexes the feasible joint CIC+SIC decode
/// sequences (1..8 for the fully split configuration; 0 is the plain
/// two-stream SIC plan). `delta` is meaningful for order 7 only and selects
/// whether UE i can cancel x_B2 before decoding x_A1.
struct DecodingPlan {
  int order = 1;
  Branch branch = Branch::first;
  int delta = 0;
};

/// Order index of the conventional two-stream SIC plan (streams (i,2), (j,2)
/// only; UE i cancels x_B2 before decoding x_A2, UE j treats x_A2 as noise).
constexpr int kConventionalSicOrder = 0;

/// Thrown when rate bounds are requested for a power vector outside the
/// order's admissible power region.
struct infeasible_order_error : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace canoma

#endif  // CANOMA_COMMON_HPP
