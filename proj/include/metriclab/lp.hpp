#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "metriclab/common.hpp"

namespace metriclab {

// Dense two-phase primal simplex for equality-form problems
//
//     min c.x   subject to   A x = b,  x >= 0.
//
// Small and deterministic by construction: entering variable by most
// negative reduced cost with lowest-index ties, switching to Bland's rule
// after a run of degenerate pivots so cycling cannot occur. The returned
// primal point and duals are re-solved from the final basis against the
// original data, so tableau round-off does not accumulate into the answer.
// Intended for the instance sizes this library needs (hundreds of
// variables, ~100 rows), not as a general-purpose solver.

enum class LpStatus { optimal, infeasible, unbounded };

struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<Vec> rows;  // each of length num_vars
  Vec rhs;
  Vec cost;
};

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Vec x;
  double value = 0.0;
  Vec dual;  // one multiplier per constraint row
  std::size_t pivots = 0;
};

namespace detail {

// solve M z = r in place by Gaussian elimination with partial pivoting;
// returns false if (numerically) singular
inline bool gauss_solve(std::vector<Vec> M, Vec r, Vec& out) {
  const std::size_t n = M.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(M[col][col]);
    for (std::size_t r2 = col + 1; r2 < n; ++r2)
      if (std::fabs(M[r2][col]) > best) {
        best = std::fabs(M[r2][col]);
        piv = r2;
      }
    if (best < 1e-13) return false;
    std::swap(M[col], M[piv]);
    std::swap(r[col], r[piv]);
    for (std::size_t r2 = col + 1; r2 < n; ++r2) {
      const double f = M[r2][col] / M[col][col];
      if (f == 0.0) continue;
      for (std::size_t c2 = col; c2 < n; ++c2) M[r2][c2] -= f * M[col][c2];
      r[r2] -= f * r[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = r[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= M[i][j] * out[j];
    out[i] = s / M[i][i];
  }
  return true;
}

}  // namespace detail

inline LpSolution solve_lp(const LpProblem& p) {
  const std::size_t m = p.rows.size();
  const std::size_t n = p.num_vars;
  if (p.rhs.size() != m || p.cost.size() != n)
    throw argument_error("solve_lp: inconsistent problem dimensions");
  for (const auto& row : p.rows)
    if (row.size() != n) throw argument_error("solve_lp: ragged constraint row");

  constexpr double eps_piv = 1e-11;
  constexpr double eps_rc = 1e-11;

  // flip rows to make the right side nonnegative
  std::vector<int> flip(m, 1);
  const std::size_t ncols = n + m;       // original + artificial
  std::vector<Vec> T(m, Vec(ncols + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    flip[i] = p.rhs[i] < 0.0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = flip[i] * p.rows[i][j];
    T[i][n + i] = 1.0;
    T[i][ncols] = flip[i] * p.rhs[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  Vec red(ncols + 1, 0.0);  // reduced-cost row, red[ncols] = -objective
  auto price_out = [&](const Vec& phase_cost) {
    for (std::size_t j = 0; j <= ncols; ++j)
      red[j] = j < phase_cost.size() ? phase_cost[j] : 0.0;
    red[ncols] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = basis[i] < phase_cost.size() ? phase_cost[basis[i]] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) red[j] -= cb * T[i][j];
    }
  };

  LpSolution sol;
  auto pivot = [&](std::size_t row, std::size_t col) {
    const double pv = T[row][col];
    for (std::size_t j = 0; j <= ncols; ++j) T[row][j] /= pv;
    T[row][col] = 1.0;  // kill round-off on the pivot itself
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = T[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) T[i][j] -= f * T[row][j];
      T[i][col] = 0.0;
    }
    const double fr = red[col];
    if (fr != 0.0) {
      for (std::size_t j = 0; j <= ncols; ++j) red[j] -= fr * T[row][j];
      red[col] = 0.0;
    }
    basis[row] = col;
    ++sol.pivots;
  };

  // entering columns are always original variables; artificials start basic
  // and never come back
  auto run_phase = [&]() -> bool {  // returns false if unbounded
    bool bland = false;
    std::size_t stall = 0;
    double last_obj = -red[ncols];
    const std::size_t cap = 20000 + 200 * (m + n);
    for (std::size_t iter = 0; iter < cap; ++iter) {
      std::size_t enter = ncols;
      if (!bland) {
        double best = -eps_rc;
        for (std::size_t j = 0; j < n; ++j)
          if (red[j] < best) {
            best = red[j];
            enter = j;
          }
      } else {
        for (std::size_t j = 0; j < n; ++j)
          if (red[j] < -eps_rc) {
            enter = j;
            break;
          }
      }
      if (enter == ncols) return true;  // optimal for this phase

      std::size_t leave = m;
      double best_ratio = kInf;
      for (std::size_t i = 0; i < m; ++i) {
        if (T[i][enter] <= eps_piv) continue;
        const double ratio = T[i][ncols] / T[i][enter];
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && (leave == m || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m) return false;  // unbounded direction
      pivot(leave, enter);

      const double obj = -red[ncols];
      if (obj < last_obj - 1e-13) {
        stall = 0;
        last_obj = obj;
      } else if (++stall > 10 * (m + 5)) {
        bland = true;
      }
    }
    throw validation_error("solve_lp: iteration cap exceeded");
  };

  // phase 1: minimize the artificial mass
  {
    Vec phase_cost(ncols, 0.0);
    for (std::size_t i = 0; i < m; ++i) phase_cost[n + i] = 1.0;
    price_out(phase_cost);
    if (!run_phase()) throw validation_error("solve_lp: phase 1 unbounded");
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= n) infeas += T[i][ncols];
    if (infeas > 1e-9) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // kick still-basic artificials out where the row allows it; rows that do
    // not allow it are redundant and keep a zero-valued artificial
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (std::fabs(T[i][j]) > eps_piv) {
          pivot(i, j);
          break;
        }
    }
  }

  // phase 2
  price_out(p.cost);
  if (!run_phase()) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  // rebuild the answer from the final basis and the original data
  std::vector<Vec> B(m, Vec(m, 0.0));
  Vec cb(m, 0.0);
  for (std::size_t col = 0; col < m; ++col) {
    const std::size_t v = basis[col];
    if (v < n) {
      for (std::size_t i = 0; i < m; ++i) B[i][col] = flip[i] * p.rows[i][v];
      cb[col] = p.cost[v];
    } else {
      B[v - n][col] = 1.0;  // artificial pinned at zero in a redundant row
    }
  }
  Vec flipped_rhs(m);
  for (std::size_t i = 0; i < m; ++i) flipped_rhs[i] = flip[i] * p.rhs[i];

  Vec xb;
  sol.x.assign(n, 0.0);
  if (detail::gauss_solve(B, flipped_rhs, xb)) {
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) sol.x[basis[i]] = xb[i];
  } else {
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) sol.x[basis[i]] = T[i][ncols];
  }
  for (auto& v : sol.x)
    if (v < 0.0 && v > -1e-10) v = 0.0;

  // duals: B^T y = c_B, then undo the row flips
  {
    std::vector<Vec> Bt(m, Vec(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) Bt[i][j] = B[j][i];
    Vec y;
    if (detail::gauss_solve(std::move(Bt), cb, y)) {
      sol.dual.assign(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) sol.dual[i] = flip[i] * y[i];
    }
  }

  sol.value = dot(p.cost, sol.x);
  sol.status = LpStatus::optimal;
  return sol;
}

}  // namespace metriclab
