// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.
//
// Monte Carlo harness: random placements and Rayleigh fading, all schemes
// evaluated on the identical per-trial instance, optional parameter sweep
// with common random numbers across sweep points, CSV emission.

#ifndef CANOMA_SIM_HPP
#define CANOMA_SIM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "canoma/baselines.hpp"
#include "canoma/caching.hpp"
#include "canoma/channel.hpp"
#include "canoma/config.hpp"
#include "canoma/delivery.hpp"
#include "canoma/rng.hpp"

namespace canoma {

enum class Scheme : int { proposed = 0, noma_cache = 1, noma_nocache = 2, oma = 3 };

constexpr int kNumSchemes = 4;

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::proposed: return "proposed";
    case Scheme::noma_cache: return "noma_cache";
    case Scheme::noma_nocache: return "noma_nocache";
    case Scheme::oma: return "oma";
  }
  return "?";
}

struct SchemeOutcome {
  double t_s = 0.0;
  double energy_j = 0.0;
  int order = 0;
  std::string branch = "-";
};

struct TrialRecord {
  double sweep_value = 0.0;
  int realization = 0;
  double alpha_i = 0.0;
  double alpha_j = 0.0;
  CacheCase cache_case = CacheCase::I;
  std::array<SchemeOutcome, kNumSchemes> outcomes{};
};

struct SweepSpec {
  std::string variable = "none";
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;

  std::vector<double> values() const {
    if (variable == "none") return {0.0};
    if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be positive");
    if (to < from) throw std::invalid_argument("sweep: empty range");
    std::vector<double> v;
    for (double x = from; x <= to + 1e-9 * step; x += step) v.push_back(std::min(x, to));
    return v;
  }
};

struct ExperimentConfig {
  Params params;
  SweepSpec sweep;
};

namespace detail {

inline void apply_sweep_value(Params& p, const std::string& variable, double value) {
  if (variable == "none") return;
  if (variable == "r_i_km") p.r_i_km = value;
  else if (variable == "r_j_km") p.r_j_km = value;
  else if (variable == "c_ia") p.c_ia = value;
  else if (variable == "c_ib") p.c_ib = value;
  else if (variable == "tx_power_dbm") p.tx_power_dbm = value;
  else throw std::invalid_argument("sweep: unknown variable '" + variable + "'");
}

inline std::string branch_code(const DecodingPlan& plan) {
  if (plan.order == 7) return plan.delta ? "d1" : "d0";
  if (order_has_branches(plan.order)) return branch_name(plan.branch);
  return "-";
}

}  // namespace detail

/// Evaluates all schemes on one sampled realization. The random stream is
/// keyed by (seed, realization) only, so every sweep point sees the same
/// placement and fading draws (common random numbers); the stream draws are
/// order-independent across trials and safe to evaluate in parallel.
inline TrialRecord run_trial(const Params& base, const std::string& sweep_variable,
                             double sweep_value, int realization) {
  Params p = base;
  detail::apply_sweep_value(p, sweep_variable, sweep_value);

  double alpha_1 = p.alpha_i, alpha_2 = p.alpha_j;
  if (!p.has_fixed_channel()) {
    RandomStream stream(p.seed, 0, static_cast<std::uint64_t>(realization));
    const GeometryConfig geom = p.geometry();
    const double noise = noise_power_w(p.noise_psd_dbm_hz, p.bandwidth_hz);
    Placement pl = sample_placement(geom, [&] { return stream.next_u01(); });
    for (int tries = 0; (pl.fading_i <= 0.0 || pl.fading_j <= 0.0) && tries < 100; ++tries) {
      if (pl.fading_i <= 0.0) pl.fading_i = stream.next_exp1();
      if (pl.fading_j <= 0.0) pl.fading_j = stream.next_exp1();
    }
    if (pl.fading_i <= 0.0 || pl.fading_j <= 0.0)
      throw std::runtime_error("run_trial: degenerate fading persisted after resampling");
    alpha_1 = effective_alpha(path_loss_db(pl.d_i_km, geom.path_loss), pl.fading_i, noise);
    alpha_2 = effective_alpha(path_loss_db(pl.d_j_km, geom.path_loss), pl.fading_j, noise);
  }

  const ChannelState ch = make_channel_state(alpha_1, alpha_2);
  const CacheSpec cache = ch.swapped ? p.cache().swapped_roles() : p.cache();
  const CacheCaseInfo info = classify_case(cache);
  const SubfileVolumes volumes = subfile_volumes(cache, info);
  const double budget = p.tx_power_w();

  TrialRecord rec;
  rec.sweep_value = sweep_value;
  rec.realization = realization;
  rec.alpha_i = ch.alpha_i;
  rec.alpha_j = ch.alpha_j;
  rec.cache_case = info.label;

  const DeliverySolution prop =
      solve_delivery(info.label, volumes, ch.alpha_i, ch.alpha_j, budget, p.bandwidth_hz);
  rec.outcomes[static_cast<int>(Scheme::proposed)] = {
      prop.t_s, budget * prop.t_s, prop.plan.order, detail::branch_code(prop.plan)};

  const NomaSolution nc = noma_solve(cache.v_a_bits, cache.v_b_bits, ch.alpha_i, ch.alpha_j,
                                     budget, p.bandwidth_hz, /*with_cache=*/true, cache);
  rec.outcomes[static_cast<int>(Scheme::noma_cache)] = {nc.t_s, budget * nc.t_s, 0, "-"};

  const NomaSolution nn = noma_solve(cache.v_a_bits, cache.v_b_bits, ch.alpha_i, ch.alpha_j,
                                     budget, p.bandwidth_hz, /*with_cache=*/false);
  rec.outcomes[static_cast<int>(Scheme::noma_nocache)] = {nn.t_s, budget * nn.t_s, 0, "-"};

  const OmaSolution om =
      oma_solve((1.0 - cache.c_ia) * cache.v_a_bits, (1.0 - cache.c_jb) * cache.v_b_bits,
                ch.alpha_i, ch.alpha_j, budget, p.bandwidth_hz);
  rec.outcomes[static_cast<int>(Scheme::oma)] = {om.t_s, budget * om.t_s, 0, "-"};
  return rec;
}

/// Runs the full experiment: every sweep value x realization, deterministic
/// under the seed regardless of thread count. `threads` <= 0 uses the
/// hardware concurrency.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, int threads = 0) {
  if (cfg.params.realizations < 1)
    throw std::invalid_argument("run_experiment: need at least one realization");
  const std::vector<double> sweep_values = cfg.sweep.values();
  const int per_value = cfg.params.realizations;
  const std::size_t total = sweep_values.size() * static_cast<std::size_t>(per_value);
  std::vector<TrialRecord> records(total);

  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(total)));

  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&](int worker_idx) {
    try {
      for (std::size_t t = worker_idx; t < total; t += threads) {
        const std::size_t sv = t / per_value;
        const int realization = static_cast<int>(t % per_value);
        records[t] = run_trial(cfg.params, cfg.sweep.variable, sweep_values[sv], realization);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

struct SummaryRow {
  double sweep_value = 0.0;
  Scheme scheme = Scheme::proposed;
  int trials = 0;
  double mean_t_s = 0.0;
  double stderr_t_s = 0.0;
  double mean_energy_j = 0.0;
  double stderr_energy_j = 0.0;
};

/// Per-(sweep value, scheme) means and standard errors, ordered by sweep
/// value then scheme.
inline std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  std::map<std::pair<double, int>, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records)
    for (int s = 0; s < kNumSchemes; ++s) groups[{r.sweep_value, s}].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [key, members] : groups) {
    SummaryRow row;
    row.sweep_value = key.first;
    row.scheme = static_cast<Scheme>(key.second);
    row.trials = static_cast<int>(members.size());
    double st = 0.0, se = 0.0;
    for (const auto* r : members) {
      st += r->outcomes[key.second].t_s;
      se += r->outcomes[key.second].energy_j;
    }
    row.mean_t_s = st / row.trials;
    row.mean_energy_j = se / row.trials;
    if (row.trials > 1) {
      double vt = 0.0, ve = 0.0;
      for (const auto* r : members) {
        const double dt = r->outcomes[key.second].t_s - row.mean_t_s;
        const double de = r->outcomes[key.second].energy_j - row.mean_energy_j;
        vt += dt * dt;
        ve += de * de;
      }
      row.stderr_t_s = std::sqrt(vt / (row.trials - 1) / row.trials);
      row.stderr_energy_j = std::sqrt(ve / (row.trials - 1) / row.trials);
    }
    rows.push_back(row);
  }
  return rows;
}

/// Fixed nine-significant-digit formatting for reproducible CSV diffs.
inline std::string fmt9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                              const std::string& sweep_variable) {
  out << "sweep_var,sweep_value,realization,alpha_i,alpha_j,case,scheme,T_s,energy_J,order_n,"
         "branch\n";
  for (const auto& r : records)
    for (int s = 0; s < kNumSchemes; ++s) {
      const auto& o = r.outcomes[s];
      out << sweep_variable << ',' << fmt9(r.sweep_value) << ',' << r.realization << ','
          << fmt9(r.alpha_i) << ',' << fmt9(r.alpha_j) << ',' << cache_case_name(r.cache_case)
          << ',' << scheme_name(static_cast<Scheme>(s)) << ',' << fmt9(o.t_s) << ','
          << fmt9(o.energy_j) << ',' << o.order << ',' << o.branch << '\n';
    }
}

inline void write_means_csv(std::ostream& out, const std::vector<SummaryRow>& rows,
                            const std::string& sweep_variable) {
  out << "sweep_var,sweep_value,scheme,trials,mean_T_s,stderr_T_s,mean_energy_J,"
         "stderr_energy_J\n";
  for (const auto& r : rows)
    out << sweep_variable << ',' << fmt9(r.sweep_value) << ',' << scheme_name(r.scheme) << ','
        << r.trials << ',' << fmt9(r.mean_t_s) << ',' << fmt9(r.stderr_t_s) << ','
        << fmt9(r.mean_energy_j) << ',' << fmt9(r.stderr_energy_j) << '\n';
}

}  // namespace canoma

#endif  // CANOMA_SIM_HPP
