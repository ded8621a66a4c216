// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.
//
// Command-line front end: fixed-channel solvers (region, pareto, delivery,
// baseline, verify) and the Monte Carlo harness (montecarlo). Parameter
// precedence is flag > config file > built-in default.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "canoma/baselines.hpp"
#include "canoma/caching.hpp"
#include "canoma/channel.hpp"
#include "canoma/config.hpp"
#include "canoma/delivery.hpp"
#include "canoma/pareto.hpp"
#include "canoma/rate_region.hpp"
#include "canoma/sim.hpp"

namespace {

using namespace canoma;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a subcommand may override; only flags the user actually passed
// are applied on top of the config file.
struct CommonFlags {
  std::string config_path;
  double alpha_i = 0.0, alpha_j = 0.0;
  double power_dbm = 0.0, bw_hz = 0.0;
  std::vector<double> cache_fracs;
  std::vector<double> volumes_mb;
  std::uint64_t seed = 0;
  int realizations = 0;

  CLI::Option* opt_config = nullptr;
  CLI::Option* opt_alpha_i = nullptr;
  CLI::Option* opt_alpha_j = nullptr;
  CLI::Option* opt_power = nullptr;
  CLI::Option* opt_bw = nullptr;
  CLI::Option* opt_cache = nullptr;
  CLI::Option* opt_volumes = nullptr;
  CLI::Option* opt_seed = nullptr;
  CLI::Option* opt_realizations = nullptr;

  void attach(CLI::App* cmd, bool with_mc_flags) {
    opt_config = cmd->add_option("--config", config_path, "key=value config file");
    opt_alpha_i = cmd->add_option("--alpha-i", alpha_i, "effective noise variance, strong UE (W)")
                      ->check(CLI::PositiveNumber);
    opt_alpha_j = cmd->add_option("--alpha-j", alpha_j, "effective noise variance, weak UE (W)")
                      ->check(CLI::PositiveNumber);
    opt_power = cmd->add_option("--power-dbm", power_dbm, "transmit power budget (dBm)");
    opt_bw = cmd->add_option("--bw-hz", bw_hz, "bandwidth (Hz)")->check(CLI::PositiveNumber);
    opt_cache = cmd->add_option("--c", cache_fracs, "cached fractions c_ia,c_ib,c_ja,c_jb")
                    ->delimiter(',')
                    ->expected(4)
                    ->check(CLI::Range(0.0, 1.0));
    opt_volumes = cmd->add_option("--v-mbytes", volumes_mb, "file volumes V_A,V_B (MBytes)")
                      ->delimiter(',')
                      ->expected(2)
                      ->check(CLI::NonNegativeNumber);
    if (with_mc_flags) {
      opt_seed = cmd->add_option("--seed", seed, "experiment seed");
      opt_realizations = cmd->add_option("--realizations", realizations, "trials per point")
                             ->check(CLI::PositiveNumber);
    }
  }

  Params resolve() const {
    Params p;  // built-in defaults
    if (opt_config && opt_config->count() > 0) {
      try {
        apply_key_values(p, parse_key_value_file(config_path));
      } catch (const std::exception& e) {
        throw usage_error(e.what());
      }
    }
    if (opt_alpha_i && opt_alpha_i->count() > 0) p.alpha_i = alpha_i;
    if (opt_alpha_j && opt_alpha_j->count() > 0) p.alpha_j = alpha_j;
    if (opt_power && opt_power->count() > 0) p.tx_power_dbm = power_dbm;
    if (opt_bw && opt_bw->count() > 0) p.bandwidth_hz = bw_hz;
    if (opt_cache && opt_cache->count() > 0) {
      p.c_ia = cache_fracs[0];
      p.c_ib = cache_fracs[1];
      p.c_ja = cache_fracs[2];
      p.c_jb = cache_fracs[3];
    }
    if (opt_volumes && opt_volumes->count() > 0) {
      p.v_a_mbytes = volumes_mb[0];
      p.v_b_mbytes = volumes_mb[1];
    }
    if (opt_seed && opt_seed->count() > 0) p.seed = seed;
    if (opt_realizations && opt_realizations->count() > 0) p.realizations = realizations;
    return p;
  }
};

void require_fixed_channel(const Params& p, const char* cmd) {
  if (!p.has_fixed_channel())
    throw usage_error(std::string(cmd) +
                      ": needs a fixed channel (--alpha-i/--alpha-j or config alpha_i/alpha_j)");
  if (!(p.alpha_i > 0.0) || !(p.alpha_j > 0.0))
    throw usage_error(std::string(cmd) + ": alphas must be positive");
}

CacheCase parse_case(const std::string& s) {
  if (s == "I") return CacheCase::I;
  if (s == "II") return CacheCase::II;
  if (s == "III") return CacheCase::III;
  if (s == "IV") return CacheCase::IV;
  throw usage_error("unknown cache case '" + s + "'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

std::ostream& output_or_stdout(std::optional<std::ofstream>& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.emplace(open_output(path));
  return *file;
}

int env_thread_cap() {
  const char* env = std::getenv("NOMA_CACHE_OPT_THREADS");
  if (!env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 0) return 0;
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------

int cmd_delivery(const CommonFlags& flags, const std::string& case_flag,
                 const std::string& out_path) {
  const Params p = flags.resolve();
  require_fixed_channel(p, "delivery");
  const ChannelState ch = make_channel_state(p.alpha_i, p.alpha_j);
  const CacheSpec cache = ch.swapped ? p.cache().swapped_roles() : p.cache();
  const CacheCaseInfo info = classify_case(cache);
  if (case_flag != "auto" && parse_case(case_flag) != info.label)
    throw std::domain_error("delivery: cache vector classifies as Case " +
                            std::string(cache_case_name(info.label)) + ", not " + case_flag);

  const DeliverySolution sol = solve_delivery(info.label, subfile_volumes(cache, info),
                                              ch.alpha_i, ch.alpha_j, p.tx_power_w(),
                                              p.bandwidth_hz);
  std::optional<std::ofstream> file;
  std::ostream& out = output_or_stdout(file, out_path);
  out << "case,order_n,branch,T_s,gamma,p_i1,p_i2,p_j1,p_j2,r_i1,r_i2,r_j1,r_j2\n";
  out << cache_case_name(sol.cache_case) << ',' << sol.plan.order << ','
      << detail::branch_code(sol.plan) << ',' << fmt9(sol.t_s) << ',' << fmt9(sol.gamma) << ','
      << fmt9(sol.powers.i1) << ',' << fmt9(sol.powers.i2) << ',' << fmt9(sol.powers.j1) << ','
      << fmt9(sol.powers.j2) << ',' << fmt9(sol.rates.i1) << ',' << fmt9(sol.rates.i2) << ','
      << fmt9(sol.rates.j1) << ',' << fmt9(sol.rates.j2) << '\n';
  return 0;
}

int cmd_pareto(const CommonFlags& flags, const std::string& case_flag, int grid,
               const std::string& out_path) {
  const Params p = flags.resolve();
  require_fixed_channel(p, "pareto");
  const CacheCase c = parse_case(case_flag);
  const auto points = pareto_sweep(c, p.alpha_i, p.alpha_j, p.tx_power_w(), grid);
  std::optional<std::ofstream> file;
  std::ostream& out = output_or_stdout(file, out_path);
  out << "case,nu_i1,nu_i2,nu_j1,nu_j2,r_sigma,r_i,r_j,order_n,p_i1,p_i2,p_j1,p_j2\n";
  for (const auto& pt : points)
    out << cache_case_name(c) << ',' << fmt9(pt.profile.i1) << ',' << fmt9(pt.profile.i2) << ','
        << fmt9(pt.profile.j1) << ',' << fmt9(pt.profile.j2) << ',' << fmt9(pt.r_sigma) << ','
        << fmt9(pt.rates.ue_i()) << ',' << fmt9(pt.rates.ue_j()) << ',' << pt.plan.order << ','
        << fmt9(pt.powers.i1) << ',' << fmt9(pt.powers.i2) << ',' << fmt9(pt.powers.j1) << ','
        << fmt9(pt.powers.j2) << '\n';
  return 0;
}

int cmd_region(const CommonFlags& flags, const std::string& case_flag, int grid,
               const std::string& out_path) {
  const Params p = flags.resolve();
  require_fixed_channel(p, "region");
  const CacheCase c = parse_case(case_flag);
  const double budget = p.tx_power_w();
  std::optional<std::ofstream> file;
  std::ostream& out = output_or_stdout(file, out_path);
  out << "scheme,case,r_i,r_j,order_n\n";
  double last_ri = -1.0, last_rj = -1.0;
  for (const auto& pt : aggregate_frontier(pareto_sweep(c, p.alpha_i, p.alpha_j, budget, grid))) {
    if (std::fabs(pt.rates.ue_i() - last_ri) < 1e-9 && std::fabs(pt.rates.ue_j() - last_rj) < 1e-9)
      continue;  // profiles sharing an aggregate collapse to one plot point
    last_ri = pt.rates.ue_i();
    last_rj = pt.rates.ue_j();
    out << "proposed," << cache_case_name(c) << ',' << fmt9(pt.rates.ue_i()) << ','
        << fmt9(pt.rates.ue_j()) << ',' << pt.plan.order << '\n';
  }
  for (const auto& rp : noma_rate_region(p.alpha_i, p.alpha_j, budget, grid + 1))
    out << "noma,-," << fmt9(rp.r_i) << ',' << fmt9(rp.r_j) << ",0\n";
  for (const auto& rp : oma_rate_region(p.alpha_i, p.alpha_j, budget, grid + 1))
    out << "oma,-," << fmt9(rp.r_i) << ',' << fmt9(rp.r_j) << ",0\n";
  return 0;
}

int cmd_baseline(const CommonFlags& flags, const std::string& scheme,
                 const std::string& out_path) {
  const Params p = flags.resolve();
  require_fixed_channel(p, "baseline");
  const ChannelState ch = make_channel_state(p.alpha_i, p.alpha_j);
  const CacheSpec cache = ch.swapped ? p.cache().swapped_roles() : p.cache();
  const double budget = p.tx_power_w();
  std::optional<std::ofstream> file;
  std::ostream& out = output_or_stdout(file, out_path);
  if (scheme == "oma") {
    const OmaSolution s =
        oma_solve((1.0 - cache.c_ia) * cache.v_a_bits, (1.0 - cache.c_jb) * cache.v_b_bits,
                  ch.alpha_i, ch.alpha_j, budget, p.bandwidth_hz);
    out << "scheme,tau,T_s,mu_i_s,mu_j_s\n";
    out << "oma," << fmt9(s.tau) << ',' << fmt9(s.t_s) << ',' << fmt9(s.mu_i_s) << ','
        << fmt9(s.mu_j_s) << '\n';
  } else if (scheme == "noma" || scheme == "noma-nocache") {
    const bool with_cache = scheme == "noma";
    const NomaSolution s = noma_solve(cache.v_a_bits, cache.v_b_bits, ch.alpha_i, ch.alpha_j,
                                      budget, p.bandwidth_hz, with_cache, cache);
    out << "scheme,T_s,p_i,p_j,r_i,r_j\n";
    out << (with_cache ? "noma" : "noma-nocache") << ',' << fmt9(s.t_s) << ',' << fmt9(s.p_i)
        << ',' << fmt9(s.p_j) << ',' << fmt9(s.r_i) << ',' << fmt9(s.r_j) << '\n';
  } else {
    throw usage_error("baseline: unknown scheme '" + scheme + "'");
  }
  return 0;
}

int cmd_montecarlo(const CommonFlags& flags, const SweepSpec& sweep, const std::string& out_path,
                   const std::string& means_path) {
  ExperimentConfig cfg;
  cfg.params = flags.resolve();
  cfg.sweep = sweep;
  const auto records = run_experiment(cfg, env_thread_cap());
  {
    std::optional<std::ofstream> file;
    std::ostream& out = output_or_stdout(file, out_path);
    write_records_csv(out, records, cfg.sweep.variable);
  }
  if (!means_path.empty()) {
    auto means = open_output(means_path);
    write_means_csv(means, summarize(records), cfg.sweep.variable);
  }
  return 0;
}

int cmd_verify(const CommonFlags& flags) {
  const Params p = flags.resolve();
  require_fixed_channel(p, "verify");
  const ChannelState ch = make_channel_state(p.alpha_i, p.alpha_j);
  const CacheSpec cache = ch.swapped ? p.cache().swapped_roles() : p.cache();
  const CacheCaseInfo info = classify_case(cache);
  const SubfileVolumes volumes = subfile_volumes(cache, info);
  const double budget = p.tx_power_w();
  const DeliverySolution sol =
      solve_delivery(info.label, volumes, ch.alpha_i, ch.alpha_j, budget, p.bandwidth_hz);
  const OptimalityReport rep = verify_solution(sol, volumes, budget);

  const auto line = [](const char* name, bool ok) {
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name << '\n';
  };
  std::cout << "case " << cache_case_name(sol.cache_case) << ", order " << sol.plan.order
            << ", branch " << detail::branch_code(sol.plan) << ", T = " << fmt9(sol.t_s)
            << " s\n";
  line("full power budget", rep.budget_ok);
  line("equal normalized completion", rep.proportional_ok);
  line("rate/interference consistency", rep.rate_consistency_ok);
  line("dominant-face rates", rep.dominant_face_ok);
  line("undemanded streams silent", rep.zero_stream_ok);
  if (!rep.detail.empty()) std::cerr << rep.detail << '\n';
  return rep.ok() ? 0 : 1;
}

}  // namespace

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"cache-aided NOMA downlink: rate regions, delivery-time optimization, baselines,"
               " Monte Carlo experiments"};
  app.require_subcommand(1);

  std::string out_path, means_path, case_flag = "auto", scheme = "oma";
  int grid = 40;
  SweepSpec sweep;

  CLI::App* c_region = app.add_subcommand("region", "emit rate-region boundary samples");
  CLI::App* c_pareto = app.add_subcommand("pareto", "trace the Pareto boundary");
  CLI::App* c_delivery = app.add_subcommand("delivery", "minimize file delivery time");
  CLI::App* c_baseline = app.add_subcommand("baseline", "solve a baseline scheme");
  CLI::App* c_mc = app.add_subcommand("montecarlo", "run the Monte Carlo experiment");
  CLI::App* c_verify = app.add_subcommand("verify", "check optimality conditions of a solution");

  CommonFlags f_region, f_pareto, f_delivery, f_baseline, f_mc, f_verify;
  f_region.attach(c_region, false);
  f_pareto.attach(c_pareto, false);
  f_delivery.attach(c_delivery, false);
  f_baseline.attach(c_baseline, false);
  f_mc.attach(c_mc, true);
  f_verify.attach(c_verify, false);

  c_region->add_option("--case", case_flag, "cache case (I, II, III, IV)");
  c_region->add_option("--grid", grid, "profile lattice divisions")->check(CLI::PositiveNumber);
  c_region->add_option("--out", out_path, "output CSV (default stdout)");

  c_pareto->add_option("--case", case_flag, "cache case (I, II, III, IV)");
  c_pareto->add_option("--grid", grid, "profile lattice divisions")->check(CLI::PositiveNumber);
  c_pareto->add_option("--out", out_path, "output CSV (default stdout)");

  c_delivery->add_option("--case", case_flag, "expected cache case or 'auto'");
  c_delivery->add_option("--out", out_path, "output CSV (default stdout)");

  c_baseline->add_option("--scheme", scheme, "oma | noma | noma-nocache");
  c_baseline->add_option("--out", out_path, "output CSV (default stdout)");

  c_mc->add_option("--sweep", sweep.variable,
                   "sweep variable (none, r_i_km, r_j_km, c_ia, c_ib, tx_power_dbm)");
  c_mc->add_option("--from", sweep.from, "sweep start");
  c_mc->add_option("--to", sweep.to, "sweep end");
  c_mc->add_option("--step", sweep.step, "sweep step");
  c_mc->add_option("--out", out_path, "records CSV (default stdout)");
  c_mc->add_option("--emit-means", means_path, "also write per-point means CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_region->parsed())
      return cmd_region(f_region, case_flag == "auto" ? "I" : case_flag, grid, out_path);
    if (c_pareto->parsed())
      return cmd_pareto(f_pareto, case_flag == "auto" ? "I" : case_flag, grid, out_path);
    if (c_delivery->parsed()) return cmd_delivery(f_delivery, case_flag, out_path);
    if (c_baseline->parsed()) return cmd_baseline(f_baseline, scheme, out_path);
    if (c_mc->parsed()) return cmd_montecarlo(f_mc, sweep, out_path, means_path);
    if (c_verify->parsed()) return cmd_verify(f_verify);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (...) {
    std::cerr << "error: unknown failure\n";
    return 1;
  }
}
