// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "canoma/linprog.hpp"
#include "canoma/pareto.hpp"
#include "canoma/rng.hpp"
#include "support/generators.hpp"

using namespace canoma;

TEST_CASE("trivial systems") {
  // x1 >= 1 and x1 <= 0.5 is infeasible
  std::vector<lp::Constraint> bad{{{-1, 0}, -1.0}, {{1, 0}, 0.5}};
  CHECK_FALSE(lp::find_feasible_point(2, bad).has_value());

  std::vector<lp::Constraint> ok{{{-1, 0}, -1.0}, {{1, 0}, 2.0}, {{0, 1}, 3.0}};
  const auto x = lp::find_feasible_point(2, ok);
  REQUIRE(x.has_value());
  CHECK((*x)[0] >= 1.0 - 1e-9);
  CHECK((*x)[0] <= 2.0 + 1e-9);

  // nonnegative combination forced below a negative bound
  std::vector<lp::Constraint> neg{{{1, 1}, -1.0}};
  CHECK_FALSE(lp::find_feasible_point(2, neg).has_value());

  CHECK(lp::find_feasible_point(3, {}).has_value());
}

TEST_CASE("random feasible systems are solved and certificates hold") {
  RandomStream rng(21, 0, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u01() * 4);  // 2..5 vars
    const int m = 1 + static_cast<int>(rng.next_u01() * 10);
    std::vector<double> witness(n);
    for (auto& w : witness) w = 10.0 * rng.next_u01();
    std::vector<lp::Constraint> rows;
    for (int r = 0; r < m; ++r) {
      lp::Constraint c;
      c.coeffs.resize(n);
      double dot = 0.0;
      for (int v = 0; v < n; ++v) {
        c.coeffs[v] = -5.0 + 10.0 * rng.next_u01();
        dot += c.coeffs[v] * witness[v];
      }
      c.bound = dot + rng.next_u01();  // witness satisfies the row
      rows.push_back(std::move(c));
    }
    const auto x = lp::find_feasible_point(n, rows);
    REQUIRE(x.has_value());
    for (const auto& row : rows) {
      double dot = 0.0;
      double scale = std::fabs(row.bound);
      for (int v = 0; v < n; ++v) {
        dot += row.coeffs[v] * (*x)[v];
        scale = std::max(scale, std::fabs(row.coeffs[v]));
      }
      CHECK(dot <= row.bound + 1e-7 * std::max(1.0, scale));
    }
    for (double v : *x) CHECK(v >= 0.0);
  }
}

TEST_CASE("linearized rate constraint matches the log form") {
  // halfspace (a - (2^c - 1) b) . p >= 2^c - 1  iff  log2(1 + a.p/(b.p+1)) >= c
  RandomStream rng(22, 0, 0);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 1000; ++trial) {
    std::array<double, 4> a{}, b{};
    for (auto& v : a) v = rng.next_u01() < 0.3 ? 0.0 : 3.0 * rng.next_u01();
    for (auto& v : b) v = rng.next_u01() < 0.5 ? 0.0 : 2.0 * rng.next_u01();
    const double c = 4.0 * rng.next_u01();
    const PowerAlloc p = testgen::random_power(rng, 4.0);
    const auto pa = p.as_array();
    double num = 0.0, den = 1.0;
    for (int s = 0; s < 4; ++s) {
      num += a[s] * pa[s];
      den += b[s] * pa[s];
    }
    const double rate = std::log2(1.0 + num / den);
    if (std::fabs(rate - c) < 1e-9) continue;  // skip the razor edge
    const Halfspace h = linearize_constraint(a, b, c);
    double lhs = 0.0;
    for (int s = 0; s < 4; ++s) lhs += h.coeff[s] * pa[s];
    CHECK((lhs >= h.rhs) == (rate >= c));
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("linearization spot values") {
  {
    // zero target: rhs 0 and nonnegative coefficients, satisfied by any p >= 0
    const Halfspace h = linearize_constraint({1, 0, 0, 0}, {0, 1, 0, 0}, 0.0);
    CHECK(h.rhs == 0.0);
    for (double v : h.coeff) CHECK(v >= 0.0);
  }
  {
    const Halfspace h = linearize_constraint({1, 0, 0, 0}, {0, 0, 0, 0}, 1.0);
    CHECK(h.coeff[0] == Catch::Approx(1.0));
    CHECK(h.rhs == Catch::Approx(1.0));  // p_i1 >= 1
  }
  {
    const Halfspace h = linearize_constraint({1, 0, 0, 0}, {0, 1, 0, 0}, 1.0);
    CHECK(h.coeff[0] == Catch::Approx(1.0));
    CHECK(h.coeff[1] == Catch::Approx(-1.0));  // p_i1 - p_i2 >= 1
    CHECK(h.rhs == Catch::Approx(1.0));
  }
  CHECK_THROWS_AS(linearize_constraint({1, 0, 0, 0}, {0, 0, 0, 0}, -0.5),
                  std::invalid_argument);
}
