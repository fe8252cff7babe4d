#pragma once

// Exact cyclotomic values as integer combinations of e-th roots of unity,
// stored as a mult vector in Z[x]/(x^e - 1). Arithmetic in that ring is
// exact; the representation is redundant (x^e - 1 is not the cyclotomic
// polynomial), so equality and integer recognition go through evaluation at
// primitive e-th roots modulo independent primes = 1 (mod e), backed by a
// floating-point sanity check.

#include <complex>
#include <deque>
#include <mutex>
#include <optional>
#include <vector>

#include "cforge/numutil.hpp"

namespace cforge {

struct Cyclo {
  u32 e = 1;
  std::vector<i64> mults;  // value = sum_j mults[j] * zeta_e^j

  Cyclo() : mults(1, 0) {}
  explicit Cyclo(u32 conductor) : e(conductor), mults(conductor, 0) {}
  static Cyclo integer(u32 conductor, i64 n) {
    Cyclo c(conductor);
    c.mults[0] = n;
    return c;
  }
  static Cyclo root_power(u32 conductor, u64 j) {
    Cyclo c(conductor);
    c.mults[j % conductor] = 1;
    return c;
  }

  bool mults_zero() const {
    for (i64 m : mults)
      if (m) return false;
    return true;
  }
  u64 l1_norm() const {
    u64 s = 0;
    for (i64 m : mults) s += (u64)(m < 0 ? -m : m);
    return s;
  }
};

Cyclo cyclo_add(const Cyclo& a, const Cyclo& b);
Cyclo cyclo_sub(const Cyclo& a, const Cyclo& b);
Cyclo cyclo_neg(const Cyclo& a);
Cyclo cyclo_scale(const Cyclo& a, i64 s);
Cyclo cyclo_mul(const Cyclo& a, const Cyclo& b);  // convolution mod x^e - 1
Cyclo cyclo_conj(const Cyclo& a);                 // zeta -> zeta^-1

// A prime p = 1 (mod e) with a fixed primitive e-th root of unity mod p.
struct RootModPrime {
  u64 p = 0;
  std::vector<u64> zeta_pow;  // zeta^j mod p for j < e
};

// Evaluation context for one conductor: two fixed verification primes plus
// lazily grown extras for integer recognition, and float roots for sanity.
class CycloCtx {
 public:
  // skip: a prime the verification set must avoid (the table's lifting
  // prime, so that verification stays independent of the construction)
  explicit CycloCtx(u32 e, u64 skip = 0);

  u32 conductor() const { return e_; }
  const RootModPrime& prime(size_t i) const;  // grows the list on demand
  size_t fixed_prime_count() const { return 2; }

  u64 eval_mod(const Cyclo& c, size_t prime_idx) const;
  std::complex<double> eval_float(const Cyclo& c) const;

 private:
  u32 e_;
  u64 skip_;
  // deque keeps references stable while parallel sweeps grow the list
  mutable std::deque<RootModPrime> primes_;
  mutable std::mutex mtx_;
  std::vector<std::complex<double>> float_roots_;
  void grow(size_t need) const;
};

RootModPrime root_mod_prime(u32 e, u64 p);

// Equality: identical mult vectors short-circuit; otherwise agreement at the
// two verification primes plus the 1e-9 float check.
bool cyclo_equal(const Cyclo& a, const Cyclo& b, const CycloCtx& ctx);
bool cyclo_is_zero(const Cyclo& a, const CycloCtx& ctx);

// Recognize a rational integer: CRT over enough primes to cover the L1 bound
// (rigorous once the value is known rational), then one extra prime and a
// float check to reject non-rational values. nullopt if not an integer.
std::optional<i64> cyclo_as_integer(const Cyclo& a, const CycloCtx& ctx);

}  // namespace cforge
