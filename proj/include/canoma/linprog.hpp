// SPDX-License-Identifier: Apache-2.0
//
// canoma -- cache-aided NOMA downlink toolkit for the two-user case.

#ifndef CANOMA_LINPROG_HPP
#define CANOMA_LINPROG_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace canoma::lp {

/// One inequality coeffs . x <= bound over nonnegative variables.
struct Constraint {
  std::vector<double> coeffs;
  double bound = 0.0;
};

/// Phase-1 simplex feasibility solver for { x >= 0 : A x <= b } with Bland's
/// rule for anti-cycling. Problems here are tiny (4 variables, a dozen rows),
/// so a dense tableau is exact enough and has no dependencies.
///
/// Returns a feasible point, or nullopt when the system is infeasible beyond
/// `feas_tol` (measured on rows normalized by their largest coefficient).
inline std::optional<std::vector<double>> find_feasible_point(
    int num_vars, std::vector<Constraint> rows, double feas_tol = 1e-9) {
  const int m = static_cast<int>(rows.size());
  if (num_vars <= 0) throw std::invalid_argument("find_feasible_point: need variables");
  for (const auto& r : rows)
    if (static_cast<int>(r.coeffs.size()) != num_vars)
      throw std::invalid_argument("find_feasible_point: row arity mismatch");
  if (m == 0) return std::vector<double>(num_vars, 0.0);

  // Row equilibration keeps the pivot tolerances meaningful when constraint
  // magnitudes span many orders (rate targets exponentiate).
  for (auto& r : rows) {
    double s = std::fabs(r.bound);
    for (double a : r.coeffs) s = std::max(s, std::fabs(a));
    if (s > 0.0) {
      for (auto& a : r.coeffs) a /= s;
      r.bound /= s;
    }
  }

  // Equality form: sign_r * (a_r . x) + sign_r * s_r [+ t_r] = sign_r * b_r,
  // with the row negated when b_r < 0 so that the rhs is nonnegative and an
  // artificial variable t_r starts basic there.
  int num_art = 0;
  for (const auto& r : rows)
    if (r.bound < 0.0) ++num_art;
  const int cols = num_vars + m + num_art;  // structural | slack | artificial
  std::vector<std::vector<double>> tab(m, std::vector<double>(cols + 1, 0.0));
  std::vector<int> basis(m, -1);
  const int art_base = num_vars + m;
  int art_used = 0;
  for (int r = 0; r < m; ++r) {
    const double sign = rows[r].bound < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < num_vars; ++j) tab[r][j] = sign * rows[r].coeffs[j];
    tab[r][num_vars + r] = sign;
    tab[r][cols] = sign * rows[r].bound;
    if (sign < 0.0) {
      const int c = art_base + art_used++;
      tab[r][c] = 1.0;
      basis[r] = c;
    } else {
      basis[r] = num_vars + r;
    }
  }

  const auto is_artificial = [&](int col) { return col >= art_base; };
  const double pivot_eps = 1e-11;

  for (int iter = 0; iter < 10000; ++iter) {
    // Reduced costs for min sum(artificials): d_j = c_j - sum over rows with
    // artificial basics of tab[r][j]. Bland: smallest improving column index.
    int enter = -1;
    for (int j = 0; j < cols && enter < 0; ++j) {
      bool basic = false;
      for (int r = 0; r < m; ++r)
        if (basis[r] == j) { basic = true; break; }
      if (basic) continue;
      double d = is_artificial(j) ? 1.0 : 0.0;
      for (int r = 0; r < m; ++r)
        if (is_artificial(basis[r])) d -= tab[r][j];
      if (d < -pivot_eps) enter = j;
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      if (tab[r][enter] <= pivot_eps) continue;
      const double ratio = tab[r][cols] / tab[r][enter];
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (std::fabs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0)
      throw std::logic_error("find_feasible_point: phase-1 objective unbounded");

    const double piv = tab[leave][enter];
    for (int j = 0; j <= cols; ++j) tab[leave][j] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = tab[r][enter];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) tab[r][j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }

  double infeasibility = 0.0;
  for (int r = 0; r < m; ++r)
    if (is_artificial(basis[r])) infeasibility += std::max(0.0, tab[r][cols]);
  if (infeasibility > feas_tol) return std::nullopt;

  std::vector<double> x(num_vars, 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < num_vars) x[basis[r]] = std::max(0.0, tab[r][cols]);
  return x;
}

}  // namespace canoma::lp

#endif  // CANOMA_LINPROG_HPP
