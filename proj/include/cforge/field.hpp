#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cforge/numutil.hpp"

namespace cforge {

// GF(p^k) with elements encoded as u32 codes in [0, q). The code's base-p
// digits are the coefficients of the residue polynomial, constant term
// first. The modulus is the lexicographically least monic irreducible of
// degree k over GF(p), so a given (p, k) always yields the same field.
class Field {
 public:
  static constexpr u64 kMaxQ = 1u << 20;

  Field(u64 p, u32 k);

  u64 p() const { return p_; }
  u32 k() const { return k_; }
  u64 q() const { return q_; }
  const std::vector<u32>& modulus() const { return modulus_; }

  u32 add(u32 a, u32 b) const;
  u32 sub(u32 a, u32 b) const;
  u32 neg(u32 a) const;
  u32 mul(u32 a, u32 b) const;
  u32 inv(u32 a) const;
  u32 pow(u32 a, u64 e) const;
  // x -> x^p, the arithmetic Frobenius.
  u32 frobenius(u32 a) const;
  // frobenius applied j times
  u32 frobenius_pow(u32 a, u32 j) const;
  // Smallest code generating the multiplicative group.
  u32 generator() const { return generator_; }
  // Embeds an integer via the prime subfield (n mod p).
  u32 from_int(i64 n) const;

  bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_; }

 private:
  u64 p_;
  u32 k_;
  u64 q_;
  std::vector<u32> modulus_;  // k+1 coefficients, monic
  u32 generator_;
  // Multiplication and inverse tables for small q; empty above the cutoff.
  std::vector<u32> mul_table_;
  std::vector<u32> inv_table_;

  u32 mul_slow(u32 a, u32 b) const;
};

// Shared, memoized field construction so matrices can hold cheap pointers.
std::shared_ptr<const Field> field_make(u64 p, u32 k);

}  // namespace cforge
