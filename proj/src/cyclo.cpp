#include "cforge/cyclo.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace cforge {

namespace {

void check_same(const Cyclo& a, const Cyclo& b) {
  if (a.e != b.e) throw std::invalid_argument("cyclotomic conductor mismatch");
}

u64 reduce_i64(i64 v, u64 p) {
  i64 r = v % (i64)p;
  if (r < 0) r += (i64)p;
  return (u64)r;
}

}  // namespace

Cyclo cyclo_add(const Cyclo& a, const Cyclo& b) {
  check_same(a, b);
  Cyclo c(a.e);
  for (u32 j = 0; j < a.e; ++j) c.mults[j] = a.mults[j] + b.mults[j];
  return c;
}

Cyclo cyclo_sub(const Cyclo& a, const Cyclo& b) {
  check_same(a, b);
  Cyclo c(a.e);
  for (u32 j = 0; j < a.e; ++j) c.mults[j] = a.mults[j] - b.mults[j];
  return c;
}

Cyclo cyclo_neg(const Cyclo& a) {
  Cyclo c(a.e);
  for (u32 j = 0; j < a.e; ++j) c.mults[j] = -a.mults[j];
  return c;
}

Cyclo cyclo_scale(const Cyclo& a, i64 s) {
  Cyclo c(a.e);
  for (u32 j = 0; j < a.e; ++j) c.mults[j] = a.mults[j] * s;
  return c;
}

Cyclo cyclo_mul(const Cyclo& a, const Cyclo& b) {
  check_same(a, b);
  Cyclo c(a.e);
  // character values have few nonzero mults, so convolve sparsely
  for (u32 i = 0; i < a.e; ++i) {
    if (!a.mults[i]) continue;
    for (u32 j = 0; j < b.e; ++j) {
      if (!b.mults[j]) continue;
      u32 k = i + j;
      if (k >= a.e) k -= a.e;
      c.mults[k] += a.mults[i] * b.mults[j];
    }
  }
  return c;
}

Cyclo cyclo_conj(const Cyclo& a) {
  Cyclo c(a.e);
  for (u32 j = 0; j < a.e; ++j) c.mults[j ? a.e - j : 0] = a.mults[j];
  return c;
}

RootModPrime root_mod_prime(u32 e, u64 p) {
  assert(p % e == (e == 1 ? 0 : 1));
  // smallest generator of the full multiplicative group, order certified
  auto fac = factorize(p - 1);
  u64 g = 1;  // p = 2: the group is trivial and generated by 1
  for (u64 cand = 2; cand < p; ++cand) {
    bool gen = true;
    for (const auto& [q, m] : fac)
      if (powmod(cand, (p - 1) / q, p) == 1) {
        gen = false;
        break;
      }
    if (gen) {
      g = cand;
      break;
    }
  }
  assert(p == 2 || g > 1);
  u64 z = powmod(g, (p - 1) / e, p);
  RootModPrime r;
  r.p = p;
  r.zeta_pow.resize(e);
  u64 cur = 1;
  for (u32 j = 0; j < e; ++j, cur = mulmod(cur, z, p)) r.zeta_pow[j] = cur;
  assert(e == 1 || mulmod(r.zeta_pow[e - 1], z, p) == 1);
  return r;
}

CycloCtx::CycloCtx(u32 e, u64 skip) : e_(e), skip_(skip) {
  float_roots_.resize(e);
  for (u32 j = 0; j < e; ++j) {
    double t = 2.0 * 3.14159265358979323846 * j / e;
    float_roots_[j] = {std::cos(t), std::sin(t)};
  }
  std::lock_guard<std::mutex> lock(mtx_);
  grow(2);
}

void CycloCtx::grow(size_t need) const {
  // caller holds mtx_
  while (primes_.size() < need) {
    u64 floor = primes_.empty() ? 1 : primes_.back().p;
    u64 p = prime_in_progression(e_, floor, skip_ ? skip_ : 1);
    primes_.push_back(root_mod_prime(e_, p));
  }
}

const RootModPrime& CycloCtx::prime(size_t i) const {
  std::lock_guard<std::mutex> lock(mtx_);
  grow(i + 1);
  return primes_[i];  // deque references stay valid after later growth
}

u64 CycloCtx::eval_mod(const Cyclo& c, size_t prime_idx) const {
  assert(c.e == e_);
  const RootModPrime& r = prime(prime_idx);
  u64 s = 0;
  for (u32 j = 0; j < c.e; ++j) {
    if (!c.mults[j]) continue;
    s = (s + mulmod(reduce_i64(c.mults[j], r.p), r.zeta_pow[j], r.p)) % r.p;
  }
  return s;
}

std::complex<double> CycloCtx::eval_float(const Cyclo& c) const {
  assert(c.e == e_);
  std::complex<double> s = 0;
  for (u32 j = 0; j < c.e; ++j)
    if (c.mults[j]) s += (double)c.mults[j] * float_roots_[j];
  return s;
}

bool cyclo_equal(const Cyclo& a, const Cyclo& b, const CycloCtx& ctx) {
  check_same(a, b);
  if (a.mults == b.mults) return true;
  Cyclo d = cyclo_sub(a, b);
  if (ctx.eval_mod(d, 0) != 0 || ctx.eval_mod(d, 1) != 0) return false;
  // float guard is meaningful only while rounding error stays below 1e-9
  if (d.l1_norm() <= 100000) return std::abs(ctx.eval_float(d)) < 1e-9;
  return true;
}

bool cyclo_is_zero(const Cyclo& a, const CycloCtx& ctx) {
  return cyclo_equal(a, Cyclo(a.e), ctx);
}

std::optional<i64> cyclo_as_integer(const Cyclo& a, const CycloCtx& ctx) {
  u64 bound = a.l1_norm();  // |value| <= sum |mults| since |zeta^j| = 1
  // CRT over primes until the modulus covers [-bound, bound]
  u128 modulus = 1;
  i128 x = 0;
  size_t used = 0;
  while (modulus <= 2 * (u128)bound) {
    const RootModPrime& r = ctx.prime(used);
    u64 want = ctx.eval_mod(a, used);
    u64 have = (u64)(((x % (i128)r.p) + (i128)r.p) % (i128)r.p);
    u64 diff = (want + r.p - have) % r.p;
    u64 minv = invmod((u64)(modulus % r.p), r.p);
    x += (i128)modulus * (i128)mulmod(diff, minv, r.p);
    modulus *= r.p;
    ++used;
  }
  if (x > (i128)modulus / 2) x -= (i128)modulus;  // centered lift
  if (x > (i128)bound || x < -(i128)bound) return std::nullopt;
  i64 value = (i64)x;
  // independent confirmation: one more prime, then float when precise enough
  const RootModPrime& v = ctx.prime(used);
  if (ctx.eval_mod(a, used) != reduce_i64(value, v.p)) return std::nullopt;
  if ((double)bound * a.e < 1e12) {
    std::complex<double> f = ctx.eval_float(a);
    double tol = std::max(1e-9, (double)bound * a.e * 1e-13);
    if (std::abs(f - std::complex<double>((double)value, 0)) > tol)
      return std::nullopt;
  }
  return value;
}

}  // namespace cforge
