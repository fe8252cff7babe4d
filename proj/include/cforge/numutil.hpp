#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace cforge {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  assert(m > 0);
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Trial-division factorization as (prime, exponent) pairs, smallest prime
// first. Fine for the sizes this project meets (q^n - 1 with q <= 16,
// n <= 12, and group orders <= 1e8).
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  assert(n > 0);
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [p, e] : factorize(n)) {
    size_t base = out.size();
    u64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Extended gcd; returns g and sets x with a*x == g (mod m context callers
// arrange). Signed to keep the Bezout bookkeeping simple.
inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i64 x1, y1;
  i64 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline u64 invmod(u64 a, u64 m) {
  i64 x, y;
  i64 g = egcd((i64)(a % m), (i64)m, x, y);
  assert(g == 1 && "invmod of non-unit");
  i64 r = x % (i64)m;
  if (r < 0) r += (i64)m;
  return (u64)r;
}

// Multiplicative order of a modulo m (a coprime to m).
inline u64 mult_order(u64 a, u64 m) {
  assert(m > 1);
  u64 lam = 1;  // exponent of the unit group, assembled from the factorization
  u64 n = 1;
  for (auto [p, e] : factorize(m)) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    u64 phi = pe / p * (p - 1);
    n *= pe;
    lam = std::lcm(lam, (p == 2 && e >= 3) ? phi / 2 : phi);
  }
  assert(std::gcd(a % n, n) == 1);
  u64 ord = lam;
  for (auto [p, e] : factorize(lam)) {
    (void)e;
    while (ord % p == 0 && powmod(a, ord / p, m) == 1) ord /= p;
  }
  assert(powmod(a, ord, m) == 1);
  return ord;
}

// Least prime l with l ≡ 1 (mod e), l > floor, l not dividing avoid.
inline u64 prime_in_progression(u64 e, u64 floor_excl, u64 avoid = 1) {
  u64 l = e + 1;
  while (l <= floor_excl) l += e;
  while (!is_prime(l) || avoid % l == 0) l += e;
  return l;
}

// Tonelli-Shanks square root mod odd prime p; returns the root in
// [0, p/2] so the choice is deterministic. Asserts a is a QR.
inline u64 sqrtmod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  assert(powmod(a, (p - 1) / 2, p) == 1 && "sqrtmod of non-residue");
  u64 r;
  if (p % 4 == 3) {
    r = powmod(a, (p + 1) / 4, p);
  } else {
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) q >>= 1, ++s;
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p),
        x = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
      u64 t2 = t;
      u64 i = 0;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, p);
        ++i;
      }
      u64 b = powmod(c, 1ull << (m - i - 1), p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      x = mulmod(x, b, p);
    }
    r = x;
  }
  if (r > p - r) r = p - r;
  assert(mulmod(r, r, p) == a);
  return r;
}

// splitmix64: small deterministic generator. Used everywhere randomness is
// needed so runs are reproducible across platforms (std distributions are
// not portable).
struct Rng {
  u64 state;
  explicit Rng(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n) by rejection, so the distribution is exact.
  u64 below(u64 n) {
    assert(n > 0);
    u64 lim = ~0ull - ~0ull % n;
    u64 v;
    do {
      v = next();
    } while (v >= lim);
    return v % n;
  }
};

}  // namespace cforge
