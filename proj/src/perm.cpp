#include "cforge/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cforge {

Perm p_id(u32 n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm p_mul(const Perm& a, const Perm& b) {
  assert(a.size() == b.size());
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Perm p_inv(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = (u16)i;
  return r;
}

Perm p_conj(const Perm& x, const Perm& g) {
  // (g^-1 x g)[g[i]] = g[x[i]], avoiding an explicit inverse
  Perm r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[g[i]] = g[x[i]];
  return r;
}

Perm p_pow(const Perm& a, i64 e) {
  Perm base = e < 0 ? p_inv(a) : a;
  u64 k = e < 0 ? (u64)(-e) : (u64)e;
  Perm r = p_id((u32)a.size());
  while (k) {
    if (k & 1) r = p_mul(r, base);
    base = p_mul(base, base);
    k >>= 1;
  }
  return r;
}

bool p_is_id(const Perm& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

u64 p_order(const Perm& a) {
  u64 ord = 1;
  for (u32 len : cycle_type(a)) ord = std::lcm(ord, (u64)len);
  return ord;
}

bool p_is_perm(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  for (u16 v : a) {
    if (v >= a.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool p_even(const Perm& a) {
  u32 transpositions = 0;
  for (u32 len : cycle_type(a)) transpositions += len - 1;
  return transpositions % 2 == 0;
}

std::vector<u32> cycle_type(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  std::vector<u32> type;
  for (size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    u32 len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = a[j];
      ++len;
    }
    if (len >= 2) type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

u32 fixed_points(const Perm& a) {
  u32 f = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] == i) ++f;
  return f;
}

std::string p_to_string(const Perm& a) {
  std::ostringstream os;
  std::vector<bool> seen(a.size(), false);
  bool any = false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == i) continue;
    any = true;
    os << "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      os << (first ? "" : " ") << j;
      first = false;
      j = a[j];
    }
    os << ")";
  }
  return any ? os.str() : "()";
}

Perm p_from_cycles(u32 n, const std::vector<std::vector<u16>>& cycles) {
  Perm p = p_id(n);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) {
      assert(c[i] < n);
      p[c[i]] = c[(i + 1) % c.size()];
    }
  assert(p_is_perm(p));
  return p;
}

std::string p_key(const Perm& a) {
  std::string s(a.size() * 2, '\0');
  for (size_t i = 0; i < a.size(); ++i) {
    s[2 * i] = (char)(a[i] & 0xff);
    s[2 * i + 1] = (char)(a[i] >> 8);
  }
  return s;
}

}  // namespace cforge
