#pragma once

// Class-algebra arithmetic over a finished ClassTable: structure constants,
// the support of a product of two classes, centralizer double-coset counts,
// and the centralizer-product (Szep) factorization test.

#include <string>
#include <utility>
#include <vector>

#include "cforge/classes.hpp"

namespace cforge {

// Decomposition of the product of classes i and j in the class algebra.
// entries holds (k, a_ijk) for every class k with a_ijk > 0, ascending in k,
// where a_ijk = #{(x, y) in C_i x C_j : xy = rep(k)}.
struct ProductSupport {
  u32 i = 0;
  u32 j = 0;
  std::vector<std::pair<u32, u64>> entries;
  std::string method = "counting";

  bool covers(u32 k) const {
    for (const auto& [c, a] : entries)
      if (c == k) return true;
    return false;
  }
};

// Outcome of the single-class-product test. When single is true the product
// C_i * C_j is exactly one conjugacy class and witness holds that class; when
// false, witness holds two distinct classes both hit by the product.
struct ClassProductCheck {
  bool single = false;
  std::vector<u32> witness;
};

// Orbits of C_G(a) acting by conjugation on the class b^G. The orbit count
// equals the number of (C_G(a), C_G(b)) double cosets in G.
struct DoubleCosetCount {
  Perm a;
  Perm b;
  u64 count = 0;
  std::vector<u64> orbit_sizes;  // discovery order; sums to |b^G|
};

// Size of the set C_G(a) * C_G(b) and whether it is all of G.
struct SzepFactorization {
  bool factors = false;
  u64 product_size = 0;  // |C(a)| * |C(b)| / |C(a) meet C(b)|
};

// a_ijk by direct counting over the smaller of the two classes.
u64 structure_constant(const ClassTable& t, u32 i, u32 j, u32 k);

// Every a_ijk > 0 from one sweep of the smaller class: the multiset of
// classes hit by {x * rep(j) : x in C_i} determines the whole row exactly.
ProductSupport product_support(const ClassTable& t, u32 i, u32 j);

ClassProductCheck is_single_class_product(const ClassTable& t, u32 i, u32 j);

DoubleCosetCount centralizer_orbit_count(const PermGroup& g, const Perm& a,
                                         const Perm& b);

SzepFactorization szep_factorization(const PermGroup& g, const Perm& a,
                                     const Perm& b);

}  // namespace cforge
