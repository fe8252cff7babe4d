#pragma once

// Dense linear algebra over F_p for the character-table eigenvector method:
// reduced row echelon form, kernel bases, and characteristic polynomials via
// Hessenberg reduction. Header-only; all loops are exact modular arithmetic.

#include <cassert>
#include <vector>

#include "cforge/numutil.hpp"

namespace cforge {

using ModVec = std::vector<u64>;
using ModMat = std::vector<ModVec>;

inline u64 mod_sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline ModVec mat_vec(const ModMat& a, const ModVec& v, u64 p) {
  ModVec w(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    u64 s = 0;
    for (size_t j = 0; j < v.size(); ++j)
      if (a[i][j] && v[j]) s = (s + mulmod(a[i][j], v[j], p)) % p;
    w[i] = s;
  }
  return w;
}

// in-place reduced row echelon form; returns the pivot column of each
// surviving row (zero rows are dropped)
inline std::vector<u32> rref(ModMat& a, u64 p) {
  std::vector<u32> pivots;
  size_t rows = a.size();
  if (!rows) return pivots;
  size_t cols = a[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    u64 inv = invmod(a[r][c], p);
    for (size_t j = c; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      u64 f = a[i][c];
      for (size_t j = c; j < cols; ++j)
        a[i][j] = mod_sub(a[i][j], mulmod(f, a[r][j], p), p);
    }
    pivots.push_back((u32)c);
    ++r;
  }
  a.resize(pivots.size());
  return pivots;
}

// basis of {v : a v = 0}, one vector per free column, deterministic order
inline std::vector<ModVec> kernel_basis(ModMat a, u64 p) {
  size_t cols = a.empty() ? 0 : a[0].size();
  std::vector<u32> pivots = rref(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (u32 c : pivots) is_pivot[c] = true;
  std::vector<ModVec> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ModVec v(cols, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = mod_sub(0, a[r][f], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// coefficients of det(xI - a), low degree first, computed from the
// Hessenberg form (similarity transforms preserve the polynomial)
inline std::vector<u64> charpoly(ModMat a, u64 p) {
  size_t n = a.size();
  for (size_t j = 0; j + 2 < n; ++j) {
    size_t piv = j + 1;
    while (piv < n && a[piv][j] == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(a[piv], a[j + 1]);
      for (size_t i = 0; i < n; ++i) std::swap(a[i][piv], a[i][j + 1]);
    }
    u64 inv = invmod(a[j + 1][j], p);
    for (size_t i = j + 2; i < n; ++i) {
      if (a[i][j] == 0) continue;
      u64 f = mulmod(a[i][j], inv, p);
      for (size_t c = 0; c < n; ++c)
        a[i][c] = mod_sub(a[i][c], mulmod(f, a[j + 1][c], p), p);
      for (size_t r = 0; r < n; ++r)
        a[r][j + 1] = (a[r][j + 1] + mulmod(f, a[r][i], p)) % p;
    }
  }
  // p_m = (x - h[m-1][m-1]) p_{m-1}
  //       - sum_i h[m-1-i][m-1] (prod of subdiagonal run) p_{m-1-i}
  std::vector<std::vector<u64>> ps(n + 1);
  ps[0] = {1};
  for (size_t m = 1; m <= n; ++m) {
    std::vector<u64>& q = ps[m];
    q.assign(m + 1, 0);
    u64 d = a[m - 1][m - 1];
    for (size_t t = 0; t < m; ++t) {
      q[t + 1] = (q[t + 1] + ps[m - 1][t]) % p;
      q[t] = mod_sub(q[t], mulmod(d, ps[m - 1][t], p), p);
    }
    u64 run = 1;
    for (size_t i = 1; i < m; ++i) {
      run = mulmod(run, a[m - i][m - i - 1], p);
      if (run == 0) break;
      u64 coef = mulmod(a[m - 1 - i][m - 1], run, p);
      if (coef == 0) continue;
      for (size_t t = 0; t + i < m; ++t)
        q[t] = mod_sub(q[t], mulmod(coef, ps[m - 1 - i][t], p), p);
    }
  }
  return ps[n];
}

inline u64 poly_eval(const std::vector<u64>& c, u64 x, u64 p) {
  u64 s = 0;
  for (size_t i = c.size(); i-- > 0;) s = (mulmod(s, x, p) + c[i]) % p;
  return s;
}

}  // namespace cforge
