// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.

#ifndef CANOMA_CACHING_HPP
#define CANOMA_CACHING_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "canoma/common.hpp"

namespace canoma {

/// Cached fractions c_kf of each file at each UE, plus file volumes.
/// UE i requests file A, UE j requests file B.
struct CacheSpec {
  double c_ia = 0.0;
  double c_ib = 0.0;
  double c_ja = 0.0;
  double c_jb = 0.0;
  double v_a_bits = 0.0;
  double v_b_bits = 0.0;

  void validate() const {
    auto frac = [](double c) { return c >= 0.0 && c <= 1.0; };
    if (!frac(c_ia) || !frac(c_ib) || !frac(c_ja) || !frac(c_jb))
      throw std::invalid_argument("cache spec: fractions must lie in [0, 1]");
    if (v_a_bits < 0.0 || v_b_bits < 0.0)
      throw std::invalid_argument("cache spec: volumes must be nonnegative");
  }

  /// Relabeled spec after swapping the UE roles (the new strong UE requests
  /// the file the old weak UE requested, so file labels swap as well).
  CacheSpec swapped_roles() const {
    return CacheSpec{c_jb, c_ja, c_ib, c_ia, v_b_bits, v_a_bits};
  }
};

enum class CacheCase : std::uint8_t { I, II, III, IV };

inline const char* cache_case_name(CacheCase c) {
  switch (c) {
    case CacheCase::I: return "I";
    case CacheCase::II: return "II";
    case CacheCase::III: return "III";
    case CacheCase::IV: return "IV";
  }
  return "?";
}

/// Per-file min/max holders and values behind a case label. `i_min_a` is true
/// when UE i holds the smaller fraction of its requested file A (ties count
/// as the requesting UE holding the minimum), `j_min_b` likewise for file B.
struct CacheCaseInfo {
  CacheCase label = CacheCase::I;
  bool i_min_a = true;
  bool j_min_b = true;
  double c_lo_a = 0.0, c_hi_a = 0.0;
  double c_lo_b = 0.0, c_hi_b = 0.0;
};

constexpr double kFractionTieTol = 1e-12;

inline CacheCaseInfo classify_case(const CacheSpec& spec) {
  spec.validate();
  CacheCaseInfo info;
  // Ties assign the requesting UE as the minimum holder: i for A, j for B.
  info.i_min_a = spec.c_ia <= spec.c_ja + kFractionTieTol;
  info.j_min_b = spec.c_jb <= spec.c_ib + kFractionTieTol;
  info.c_lo_a = std::min(spec.c_ia, spec.c_ja);
  info.c_hi_a = std::max(spec.c_ia, spec.c_ja);
  info.c_lo_b = std::min(spec.c_ib, spec.c_jb);
  info.c_hi_b = std::max(spec.c_ib, spec.c_jb);
  if (info.i_min_a)
    info.label = info.j_min_b ? CacheCase::I : CacheCase::III;
  else
    info.label = info.j_min_b ? CacheCase::II : CacheCase::IV;
  return info;
}

/// Volumes of the subfiles actually transmitted. For UE k requesting file f,
/// beta_k1 is the portion cached only at the other UE (cancelable there via
/// CIC) and beta_k2 the portion cached nowhere; offload_k is the portion
/// already cached at UE k and never transmitted.
struct SubfileVolumes {
  double beta_i1 = 0.0;
  double beta_i2 = 0.0;
  double beta_j1 = 0.0;
  double beta_j2 = 0.0;
  double offload_i = 0.0;
  double offload_j = 0.0;

  std::array<double, 4> as_array() const { return {beta_i1, beta_i2, beta_j1, beta_j2}; }
  double ue_i_total() const { return beta_i1 + beta_i2; }
  double ue_j_total() const { return beta_j1 + beta_j2; }
};

inline SubfileVolumes subfile_volumes(const CacheSpec& spec, const CacheCaseInfo& info) {
  SubfileVolumes v;
  v.beta_i1 = std::max(0.0, info.c_hi_a - spec.c_ia) * spec.v_a_bits;
  v.beta_i2 = (1.0 - info.c_hi_a) * spec.v_a_bits;
  v.beta_j1 = std::max(0.0, info.c_hi_b - spec.c_jb) * spec.v_b_bits;
  v.beta_j2 = (1.0 - info.c_hi_b) * spec.v_b_bits;
  v.offload_i = spec.c_ia * spec.v_a_bits;
  v.offload_j = spec.c_jb * spec.v_b_bits;
  return v;
}

inline SubfileVolumes subfile_volumes(const CacheSpec& spec) {
  return subfile_volumes(spec, classify_case(spec));
}

/// Packet-count split for MDS-coded caching: n0 packets are already cached at
/// both UEs (offloaded), n1 packets are cached only at the better-provisioned
/// UE (delivered as the cancelable subfile), and n2 packets are cached
/// nowhere. `m_code` is the number of source chunks; any
/// ceil(m_code * (1 + eps)) unique packets suffice to decode.
struct MdsPacketSplit {
  long long n0 = 0;
  long long n1 = 0;
  long long n2 = 0;
};

inline MdsPacketSplit mds_subfile_packets(long long m_i, long long m_j, long long m_code,
                                          double eps = 0.0) {
  if (m_i < 0 || m_j < 0 || m_code < 0 || eps < 0.0)
    throw std::invalid_argument("mds_subfile_packets: counts must be nonnegative");
  const long long needed = static_cast<long long>(std::ceil(static_cast<double>(m_code) * (1.0 + eps)));
  if (m_i > needed || m_j > needed)
    throw std::invalid_argument("mds_subfile_packets: cached packets exceed the decodable total");
  MdsPacketSplit s;
  s.n0 = std::min(m_i, m_j);
  s.n1 = std::llabs(m_j - m_i);
  s.n2 = needed - std::max(m_i, m_j);
  return s;
}

}  // namespace canoma

#endif  // CANOMA_CACHING_HPP
