#pragma once

#include <string>
#include <vector>

#include "cforge/numutil.hpp"

namespace cforge {

// Permutation of {0,...,n-1} as an image array. Points act on the right:
// p_mul(a, b) applies a first, then b, so point images satisfy
// (i^a)^b = i^(a*b). Conjugation is x^g = g^-1 * x * g.
using Perm = std::vector<u16>;

Perm p_id(u32 n);
Perm p_mul(const Perm& a, const Perm& b);
Perm p_inv(const Perm& a);
Perm p_conj(const Perm& x, const Perm& g);  // g^-1 * x * g
Perm p_pow(const Perm& a, i64 e);
bool p_is_id(const Perm& a);
u64 p_order(const Perm& a);
bool p_is_perm(const Perm& a);  // validates bijectivity
bool p_even(const Perm& a);

// Sorted cycle lengths >= 2; the shared shape fingerprint.
std::vector<u32> cycle_type(const Perm& a);

u32 fixed_points(const Perm& a);

// Cycle notation like "(0 1 2)(3 4)"; "()" for the identity.
std::string p_to_string(const Perm& a);

// Builds a permutation of size n from disjoint cycles given as point lists.
Perm p_from_cycles(u32 n, const std::vector<std::vector<u16>>& cycles);

// Compact byte key for hashing (2 bytes per point).
std::string p_key(const Perm& a);

}  // namespace cforge
