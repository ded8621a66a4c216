// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.

#ifndef CANOMA_CONFIG_HPP
#define CANOMA_CONFIG_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "canoma/caching.hpp"
#include "canoma/channel.hpp"
#include "canoma/common.hpp"

namespace canoma {

constexpr double kBitsPerMbyte = 8e6;

/// All tunable instance parameters with their built-in defaults. Values can
/// be overridden by a key=value config file and then by command-line flags,
/// in that precedence order.
struct Params {
  double cell_radius_km = 3.0;
  double r_i_km = 1.0;
  double r_j_km = 2.0;
  double tx_power_dbm = 36.0;
  double bandwidth_hz = 5e6;
  double noise_psd_dbm_hz = -172.6;
  double pl_intercept_db = 128.1;
  double pl_slope = 37.6;
  double c_ia = 0.2;
  double c_ib = 0.8;
  double c_ja = 0.8;
  double c_jb = 0.2;
  double v_a_mbytes = 500.0;
  double v_b_mbytes = 500.0;
  // Fixed-channel overrides; NaN means "derive from geometry per trial".
  double alpha_i = std::nan("");
  double alpha_j = std::nan("");
  std::uint64_t seed = 1;
  int realizations = 100;

  bool has_fixed_channel() const { return !std::isnan(alpha_i) && !std::isnan(alpha_j); }
  double tx_power_w() const { return dbm_to_watts(tx_power_dbm); }

  GeometryConfig geometry() const {
    GeometryConfig g;
    g.cell_radius_km = cell_radius_km;
    g.r_i_km = r_i_km;
    g.r_j_km = r_j_km;
    g.path_loss = {pl_intercept_db, pl_slope};
    g.bandwidth_hz = bandwidth_hz;
    g.noise_psd_dbm_hz = noise_psd_dbm_hz;
    g.tx_power_dbm = tx_power_dbm;
    return g;
  }

  CacheSpec cache() const {
    return CacheSpec{c_ia, c_ib, c_ja, c_jb, v_a_mbytes * kBitsPerMbyte,
                     v_b_mbytes * kBitsPerMbyte};
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

/// Parses a flat key=value file (UTF-8, '#' starts a comment) into a map.
/// Throws std::runtime_error on unreadable files or malformed lines.
inline std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) + " is not key=value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw std::runtime_error("config: empty key on line " + std::to_string(lineno));
    kv[key] = val;
  }
  return kv;
}

/// Applies a key/value map onto params. Unknown keys are rejected so typos
/// fail loudly rather than silently keeping a default.
inline void apply_key_values(Params& p, const std::map<std::string, std::string>& kv) {
  const auto as_double = [](const std::string& k, const std::string& v) {
    try {
      size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw std::runtime_error("config: key '" + k + "' has non-numeric value '" + v + "'");
    }
  };
  for (const auto& [k, v] : kv) {
    if (k == "cell_radius_km") p.cell_radius_km = as_double(k, v);
    else if (k == "r_i_km") p.r_i_km = as_double(k, v);
    else if (k == "r_j_km") p.r_j_km = as_double(k, v);
    else if (k == "tx_power_dbm") p.tx_power_dbm = as_double(k, v);
    else if (k == "bandwidth_hz") p.bandwidth_hz = as_double(k, v);
    else if (k == "noise_psd_dbm_hz") p.noise_psd_dbm_hz = as_double(k, v);
    else if (k == "pl_intercept_db") p.pl_intercept_db = as_double(k, v);
    else if (k == "pl_slope") p.pl_slope = as_double(k, v);
    else if (k == "c_ia") p.c_ia = as_double(k, v);
    else if (k == "c_ib") p.c_ib = as_double(k, v);
    else if (k == "c_ja") p.c_ja = as_double(k, v);
    else if (k == "c_jb") p.c_jb = as_double(k, v);
    else if (k == "v_a_mbytes") p.v_a_mbytes = as_double(k, v);
    else if (k == "v_b_mbytes") p.v_b_mbytes = as_double(k, v);
    else if (k == "alpha_i") p.alpha_i = as_double(k, v);
    else if (k == "alpha_j") p.alpha_j = as_double(k, v);
    else if (k == "seed") p.seed = static_cast<std::uint64_t>(as_double(k, v));
    else if (k == "realizations") p.realizations = static_cast<int>(as_double(k, v));
    else throw std::runtime_error("config: unknown key '" + k + "'");
  }
}

}  // namespace canoma

#endif  // CANOMA_CONFIG_HPP
