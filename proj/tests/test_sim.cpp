// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "canoma/config.hpp"
#include "canoma/sim.hpp"

using namespace canoma;

namespace {
ExperimentConfig small_config(int realizations = 20) {
  ExperimentConfig cfg;
  cfg.params.realizations = realizations;
  cfg.params.seed = 7;
  return cfg;
}
}  // namespace

TEST_CASE("built-in defaults") {
  const Params p;
  CHECK(p.cell_radius_km == 3.0);
  CHECK(p.r_i_km == 1.0);
  CHECK(p.r_j_km == 2.0);
  CHECK(p.tx_power_dbm == 36.0);
  CHECK(p.bandwidth_hz == 5e6);
  CHECK(p.noise_psd_dbm_hz == -172.6);
  CHECK(p.c_ia == 0.2);
  CHECK(p.c_ib == 0.8);
  CHECK(p.c_ja == 0.8);
  CHECK(p.c_jb == 0.2);
  CHECK(p.v_a_mbytes == 500.0);
  CHECK(p.realizations == 100);
  CHECK(p.cache().v_a_bits == 4.0e9);  // 500 MBytes
  CHECK(p.tx_power_w() == Catch::Approx(3.98107).epsilon(1e-4));
}

TEST_CASE("config parsing and precedence") {
  const std::string path = "test_config_tmp.cfg";
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "tx_power_dbm = 30  # trailing comment\n"
        << "c_ia=0.4\n"
        << "\n"
        << "v_a_mbytes = 100\n";
  }
  Params p;
  apply_key_values(p, parse_key_value_file(path));
  CHECK(p.tx_power_dbm == 30.0);
  CHECK(p.c_ia == 0.4);
  CHECK(p.v_a_mbytes == 100.0);
  CHECK(p.c_ib == 0.8);  // untouched keys keep defaults

  // a later per-key override (the flag layer) wins over the file
  apply_key_values(p, {{"tx_power_dbm", "33"}});
  CHECK(p.tx_power_dbm == 33.0);
  CHECK(p.c_ia == 0.4);

  CHECK_THROWS_AS(apply_key_values(p, {{"no_such_key", "1"}}), std::runtime_error);
  CHECK_THROWS_AS(apply_key_values(p, {{"tx_power_dbm", "abc"}}), std::runtime_error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_key_value_file(path), std::runtime_error);
}

TEST_CASE("random streams are deterministic and keyed") {
  RandomStream a(9, 0, 5), b(9, 0, 5), c(9, 0, 6);
  bool all_equal = true, any_diff = false;
  for (int k = 0; k < 100; ++k) {
    const auto va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_diff = any_diff || va != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
  RandomStream u(1, 0, 0);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.next_u01();
    CHECK(x > 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("experiment is deterministic and thread-count independent") {
  const ExperimentConfig cfg = small_config(10);
  const auto a = run_experiment(cfg, 1);
  const auto b = run_experiment(cfg, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].alpha_i == b[t].alpha_i);
    CHECK(a[t].alpha_j == b[t].alpha_j);
    for (int s = 0; s < kNumSchemes; ++s)
      CHECK(a[t].outcomes[s].t_s == b[t].outcomes[s].t_s);
  }
  std::ostringstream csv_a, csv_b;
  write_records_csv(csv_a, a, "none");
  write_records_csv(csv_b, b, "none");
  CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("scheme ordering holds per trial with UE labels sorted by strength") {
  const ExperimentConfig cfg = small_config(60);
  const auto records = run_experiment(cfg, 0);
  const double budget = cfg.params.tx_power_w();
  for (const auto& r : records) {
    CHECK(r.alpha_i <= r.alpha_j);
    const double prop = r.outcomes[static_cast<int>(Scheme::proposed)].t_s;
    const double nc = r.outcomes[static_cast<int>(Scheme::noma_cache)].t_s;
    const double nn = r.outcomes[static_cast<int>(Scheme::noma_nocache)].t_s;
    CHECK(prop <= nc * (1.0 + 1e-9));
    CHECK(nc <= nn * (1.0 + 1e-9));
    for (const auto& o : r.outcomes)  // energy accounting basis
      CHECK(o.energy_j == Catch::Approx(budget * o.t_s).epsilon(1e-12));
  }
}

TEST_CASE("sweeping the cross-file cache shares channel draws and leaves NOMA flat") {
  ExperimentConfig cfg = small_config(15);
  cfg.sweep = {"c_ib", 0.0, 1.0, 0.25};
  const auto records = run_experiment(cfg, 0);
  const int per_value = cfg.params.realizations;
  REQUIRE(records.size() == 5u * per_value);
  for (int r = 0; r < per_value; ++r) {
    const TrialRecord& base = records[r];
    for (int sv = 1; sv < 5; ++sv) {
      const TrialRecord& other = records[sv * per_value + r];
      CHECK(other.alpha_i == base.alpha_i);  // common random numbers
      CHECK(other.alpha_j == base.alpha_j);
      CHECK(other.outcomes[static_cast<int>(Scheme::noma_cache)].t_s ==
            base.outcomes[static_cast<int>(Scheme::noma_cache)].t_s);
      CHECK(other.outcomes[static_cast<int>(Scheme::noma_nocache)].t_s ==
            base.outcomes[static_cast<int>(Scheme::noma_nocache)].t_s);
      CHECK(other.outcomes[static_cast<int>(Scheme::oma)].t_s ==
            base.outcomes[static_cast<int>(Scheme::oma)].t_s);
    }
  }
  // proposed-scheme means can only improve as more of the cross file is cached
  const auto means = summarize(records);
  double prev = kInf;
  for (const auto& row : means) {
    if (row.scheme != Scheme::proposed) continue;
    CHECK(row.mean_t_s <= prev * (1.0 + 1e-9));
    prev = row.mean_t_s;
  }
}

TEST_CASE("requested-file sweep lowers the cache-aware schemes") {
  ExperimentConfig cfg = small_config(15);
  cfg.sweep = {"c_ia", 0.0, 1.0, 0.25};
  const auto means = summarize(run_experiment(cfg, 0));
  double prev_prop = kInf, prev_oma = kInf;
  for (const auto& row : means) {
    if (row.scheme == Scheme::proposed) {
      CHECK(row.mean_t_s <= prev_prop * (1.0 + 1e-9));
      prev_prop = row.mean_t_s;
    } else if (row.scheme == Scheme::oma) {
      CHECK(row.mean_t_s <= prev_oma * (1.0 + 1e-9));
      prev_oma = row.mean_t_s;
    }
  }
}

TEST_CASE("power sweep trades delivery time against energy") {
  ExperimentConfig cfg = small_config(15);
  cfg.sweep = {"tx_power_dbm", 28.0, 44.0, 4.0};
  const auto means = summarize(run_experiment(cfg, 0));
  double t_first = -1.0, t_last = -1.0, e_first = -1.0, e_last = -1.0;
  for (const auto& row : means) {
    if (row.scheme != Scheme::proposed) continue;
    if (t_first < 0.0) {
      t_first = row.mean_t_s;
      e_first = row.mean_energy_j;
    }
    t_last = row.mean_t_s;
    e_last = row.mean_energy_j;
  }
  CHECK(t_last <= t_first);
  CHECK(e_last >= e_first);
}

TEST_CASE("fully cached request closes the gap to cached NOMA") {
  // when both cancelable subfiles are empty the proposed scheme and cached
  // NOMA coincide; with the default weak-UE cache this happens at c_ia = 1
  ExperimentConfig cfg = small_config(10);
  cfg.params.c_ia = 1.0;
  cfg.params.c_ib = 0.2;  // equal to c_jb: nothing cancelable for UE j either
  const auto records = run_experiment(cfg, 0);
  for (const auto& r : records) {
    const double prop = r.outcomes[static_cast<int>(Scheme::proposed)].t_s;
    const double nc = r.outcomes[static_cast<int>(Scheme::noma_cache)].t_s;
    CHECK(prop == Catch::Approx(nc).epsilon(1e-6));
  }
}

TEST_CASE("summary statistics") {
  TrialRecord r1;
  r1.sweep_value = 0.0;
  r1.outcomes[0] = {10.0, 40.0, 1, "-"};
  TrialRecord r2 = r1;
  {
    const auto rows = summarize({r1});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].mean_t_s == 10.0);
    CHECK(rows[0].stderr_t_s == 0.0);
  }
  {
    const auto rows = summarize({r1, r2});
    CHECK(rows[0].mean_t_s == 10.0);
    CHECK(rows[0].stderr_t_s == 0.0);  // identical records: no spread
  }
  {
    std::vector<TrialRecord> batch;
    double sum = 0.0;
    for (int k = 0; k < 100; ++k) {
      TrialRecord r;
      r.outcomes[0].t_s = 1.0 + k;
      sum += 1.0 + k;
      batch.push_back(r);
    }
    const auto rows = summarize(batch);
    CHECK(rows[0].mean_t_s == Catch::Approx(sum / 100.0));
  }
  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("sweep value validation") {
  SweepSpec bad{"c_ia", 0.5, 0.1, 0.1};
  CHECK_THROWS_AS(bad.values(), std::invalid_argument);
  SweepSpec zero_step{"c_ia", 0.0, 1.0, 0.0};
  CHECK_THROWS_AS(zero_step.values(), std::invalid_argument);
  SweepSpec ok{"c_ia", 0.0, 1.0, 0.5};
  CHECK(ok.values() == std::vector<double>{0.0, 0.5, 1.0});
  ExperimentConfig cfg = small_config(1);
  cfg.sweep = {"bogus_var", 0.0, 1.0, 0.5};
  CHECK_THROWS_AS(run_experiment(cfg, 1), std::invalid_argument);
}
