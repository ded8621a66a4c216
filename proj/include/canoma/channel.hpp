// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.

#ifndef CANOMA_CHANNEL_HPP
#define CANOMA_CHANNEL_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

#include "canoma/common.hpp"

namespace canoma {

/// Log-distance path loss model, PL(dB) = intercept + slope * log10(d_km).
/// Defaults approximate a macro-cell NLOS deployment.
struct PathLossModel {
  double intercept_db = 128.1;
  double slope = 37.6;
};

struct GeometryConfig {
  double cell_radius_km = 3.0;
  double r_i_km = 1.0;  // disc radius for the nominal strong UE
  double r_j_km = 2.0;  // disc radius for the nominal weak UE
  PathLossModel path_loss{};
  double bandwidth_hz = 5e6;
  double noise_psd_dbm_hz = -172.6;
  double tx_power_dbm = 36.0;

  void validate() const {
    if (!(r_i_km > 0.0) || !(r_j_km > 0.0))
      throw std::invalid_argument("geometry: disc radii must be positive");
    if (r_i_km > r_j_km || r_j_km > cell_radius_km)
      throw std::invalid_argument("geometry: require 0 < r_i <= r_j <= cell radius");
    if (!(bandwidth_hz > 0.0))
      throw std::invalid_argument("geometry: bandwidth must be positive");
  }
};

struct UeChannelDetail {
  double distance_km = 0.0;
  double path_loss_db = 0.0;
  double fading_gain = 0.0;
  double noise_power_w = 0.0;
};

/// Effective noise variances (noise power over channel power gain) with the
/// UE labels canonicalized so that alpha_i <= alpha_j.
struct ChannelState {
  double alpha_i = 0.0;
  double alpha_j = 0.0;
  bool swapped = false;  // true when the input labels were permuted
  std::optional<UeChannelDetail> detail_i;
  std::optional<UeChannelDetail> detail_j;
};

inline double path_loss_db(double d_km, const PathLossModel& model = {}) {
  if (!(d_km > 0.0)) throw std::domain_error("path_loss_db: distance must be positive");
  return model.intercept_db + model.slope * std::log10(d_km);
}

inline double noise_power_w(double psd_dbm_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0))
    throw std::domain_error("noise_power_w: bandwidth must be positive");
  return dbm_to_watts(psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

/// alpha = noise / (fading_gain * path_gain); a zero fading gain corresponds
/// to a degenerate channel and must be resampled by the caller.
inline double effective_alpha(double pl_db, double fading_gain, double noise_w) {
  if (!(fading_gain > 0.0))
    throw std::domain_error("effective_alpha: degenerate channel (fading gain <= 0)");
  if (!(noise_w > 0.0)) throw std::domain_error("effective_alpha: noise power must be positive");
  return noise_w / (fading_gain * db_to_linear(-pl_db));
}

inline ChannelState make_channel_state(double alpha_1, double alpha_2,
                                       std::optional<UeChannelDetail> detail_1 = std::nullopt,
                                       std::optional<UeChannelDetail> detail_2 = std::nullopt) {
  if (!(alpha_1 > 0.0) || !(alpha_2 > 0.0))
    throw std::domain_error("make_channel_state: effective noise variances must be positive");
  ChannelState st;
  if (alpha_1 > alpha_2 + kAlphaTieTol) {
    st.alpha_i = alpha_2;
    st.alpha_j = alpha_1;
    st.swapped = true;
    st.detail_i = detail_2;
    st.detail_j = detail_1;
  } else {
    st.alpha_i = alpha_1;
    st.alpha_j = alpha_2;
    st.swapped = false;
    st.detail_i = detail_1;
    st.detail_j = detail_2;
  }
  return st;
}

struct Placement {
  double d_i_km = 0.0;
  double d_j_km = 0.0;
  double fading_i = 0.0;
  double fading_j = 0.0;
};

/// Draws UE positions uniformly on their discs (d = R * sqrt(u)) and
/// Rayleigh-fading power gains (unit-mean exponential). `uniform` must yield
/// independent draws in (0, 1]; the draw order is fixed:
/// u_i, u_j, fading_i, fading_j.
template <typename UniformSource>
Placement sample_placement(const GeometryConfig& geom, UniformSource&& uniform) {
  geom.validate();
  Placement p;
  p.d_i_km = geom.r_i_km * std::sqrt(uniform());
  p.d_j_km = geom.r_j_km * std::sqrt(uniform());
  p.fading_i = -std::log(uniform());
  p.fading_j = -std::log(uniform());
  return p;
}

}  // namespace canoma

#endif  // CANOMA_CHANNEL_HPP
