#include "scs/linprog.hpp"

#include <cstddef>
#include <stdexcept>

namespace scs {

namespace {

// Full tableau, (m+1) x (width+1): m constraint rows then the reduced-cost
// row, last column is the rhs (objective row keeps -z there).
struct Tableau {
  size_t m, width;
  std::vector<std::vector<Rat>> t;
  std::vector<size_t> basis;

  Rat& at(size_t r, size_t c) { return t[r][c]; }

  void pivot(size_t r, size_t e) {
    Rat inv = at(r, e);
    for (auto& v : t[r]) v /= inv;
    for (size_t i = 0; i <= m; ++i) {
      if (i == r) continue;
      Rat f = at(i, e);
      if (f == 0) continue;
      for (size_t c = 0; c <= width; ++c) at(i, c) -= f * t[r][c];
    }
    basis[r] = e;
  }

  // Bland's rule: lowest-index entering column with a negative reduced cost,
  // lowest-index basic variable among the minimal-ratio rows. Never cycles.
  LpStatus run(size_t ncols) {
    for (;;) {
      size_t enter = width;
      for (size_t j = 0; j < ncols; ++j)
        if (at(m, j) < 0) {
          enter = j;
          break;
        }
      if (enter == width) return LpStatus::optimal;

      size_t leave = m;
      Rat best;
      for (size_t i = 0; i < m; ++i) {
        if (at(i, enter) <= 0) continue;
        Rat ratio = at(i, width) / at(i, enter);
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  size_t m = lp.rows.size();
  size_t n = lp.cost.size();
  for (const auto& r : lp.rows)
    if (r.size() != n) throw std::invalid_argument("lp row width mismatch");
  if (lp.rhs.size() != m) throw std::invalid_argument("lp rhs size mismatch");

  // Phase 1: artificial basis, minimize the artificial total.
  Tableau tab;
  tab.m = m;
  tab.width = n + m;
  tab.t.assign(m + 1, std::vector<Rat>(tab.width + 1));
  tab.basis.resize(m);
  for (size_t i = 0; i < m; ++i) {
    bool flip = lp.rhs[i] < 0;
    for (size_t j = 0; j < n; ++j) tab.at(i, j) = flip ? -lp.rows[i][j] : lp.rows[i][j];
    tab.at(i, n + i) = 1;
    tab.at(i, tab.width) = flip ? -lp.rhs[i] : lp.rhs[i];
    tab.basis[i] = n + i;
  }
  for (size_t j = 0; j < n; ++j) {
    Rat s = 0;
    for (size_t i = 0; i < m; ++i) s += tab.at(i, j);
    tab.at(m, j) = -s;
  }
  {
    Rat s = 0;
    for (size_t i = 0; i < m; ++i) s += tab.at(i, tab.width);
    tab.at(m, tab.width) = -s;
  }
  if (tab.run(tab.width) != LpStatus::optimal)
    throw std::logic_error("phase 1 cannot be unbounded");
  if (tab.at(m, tab.width) != 0) return {LpStatus::infeasible, Rat{}, {}};

  // Drive surviving artificials out; a row with no original coefficient left
  // is a redundant constraint and goes away.
  std::vector<size_t> keep;
  for (size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) {
      keep.push_back(i);
      continue;
    }
    size_t e = n;
    for (size_t j = 0; j < n; ++j)
      if (tab.at(i, j) != 0) {
        e = j;
        break;
      }
    if (e < n) {
      tab.pivot(i, e);
      keep.push_back(i);
    }
  }

  // Phase 2 on the original columns only.
  Tableau ph2;
  ph2.m = keep.size();
  ph2.width = n;
  ph2.t.assign(ph2.m + 1, std::vector<Rat>(n + 1));
  ph2.basis.resize(ph2.m);
  for (size_t i = 0; i < keep.size(); ++i) {
    for (size_t j = 0; j < n; ++j) ph2.at(i, j) = tab.at(keep[i], j);
    ph2.at(i, n) = tab.at(keep[i], tab.width);
    ph2.basis[i] = tab.basis[keep[i]];
  }
  for (size_t j = 0; j < n; ++j) {
    Rat red = lp.cost[j];
    for (size_t i = 0; i < ph2.m; ++i) red -= lp.cost[ph2.basis[i]] * ph2.at(i, j);
    ph2.at(ph2.m, j) = red;
  }
  {
    Rat z = 0;
    for (size_t i = 0; i < ph2.m; ++i) z += lp.cost[ph2.basis[i]] * ph2.at(i, n);
    ph2.at(ph2.m, n) = -z;
  }
  if (ph2.run(n) == LpStatus::unbounded) return {LpStatus::unbounded, Rat{}, {}};

  LpResult res;
  res.status = LpStatus::optimal;
  res.x.assign(n, Rat{});
  for (size_t i = 0; i < ph2.m; ++i) res.x[ph2.basis[i]] = ph2.at(i, n);
  res.objective = -ph2.at(ph2.m, n);
  return res;
}

}  // namespace scs
