#include "cforge/classalg.hpp"

#include <cassert>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace cforge {

u64 structure_constant(const ClassTable& t, u32 i, u32 j, u32 k) {
  if (i >= t.count() || j >= t.count() || k >= t.count())
    throw std::out_of_range("class index out of range");
  // a_ijk = #{x in C_i : x^-1 * rep(k) in C_j}
  //       = #{y in C_j : rep(k) * y^-1 in C_i}, so sweep the smaller class.
  const Perm& g = t.rep(k);
  u64 n = 0;
  if (t.size(i) <= t.size(j)) {
    for (const auto& x : t.class_elements(i))
      if (t.identify(p_mul(p_inv(x), g)) == j) ++n;
  } else {
    for (const auto& y : t.class_elements(j))
      if (t.identify(p_mul(g, p_inv(y))) == i) ++n;
  }
  return n;
}

ProductSupport product_support(const ClassTable& t, u32 i, u32 j) {
  if (i >= t.count() || j >= t.count())
    throw std::out_of_range("class index out of range");
  // Conjugating x permutes C_j, so #{y in C_j : xy in C_k} is the same for
  // every x in C_i. Fixing one representative of the larger class therefore
  // captures the whole product: a_ijk * |C_k| = |C_larger| * hits_k.
  u32 sweep = i, fixed = j;
  bool fixed_on_right = true;
  if (t.size(j) < t.size(i)) {
    sweep = j;
    fixed = i;
    fixed_on_right = false;
  }
  const Perm& f = t.rep(fixed);
  std::vector<u64> hits(t.count(), 0);
  for (const auto& x : t.class_elements(sweep))
    ++hits[t.identify(fixed_on_right ? p_mul(x, f) : p_mul(f, x))];

  ProductSupport out;
  out.i = i;
  out.j = j;
  u64 check = 0;
  for (u32 k = 0; k < t.count(); ++k) {
    if (hits[k] == 0) continue;
    u64 prod = t.size(fixed) * hits[k];
    assert(prod % t.size(k) == 0);
    out.entries.emplace_back(k, prod / t.size(k));
    check += prod;
  }
  // the Burnside counting identity, exact: sum_k a_ijk |C_k| = |C_i| |C_j|
  assert(check == t.size(i) * t.size(j));
  return out;
}

ClassProductCheck is_single_class_product(const ClassTable& t, u32 i, u32 j) {
  ProductSupport s = product_support(t, i, j);
  ClassProductCheck out;
  out.single = s.entries.size() == 1;
  out.witness.push_back(s.entries[0].first);
  if (!out.single) out.witness.push_back(s.entries[1].first);
  return out;
}

DoubleCosetCount centralizer_orbit_count(const PermGroup& g, const Perm& a,
                                         const Perm& b) {
  if (!g.contains(a) || !g.contains(b)) throw NotInGroup("element not in group");
  PermGroup ca = g.centralizer(a);
  std::vector<Perm> cls = g.conjugation_orbit(b);

  DoubleCosetCount out;
  out.a = a;
  out.b = b;
  std::unordered_set<std::string> seen;
  seen.reserve(cls.size() * 2);
  for (const auto& start : cls) {
    if (seen.count(p_key(start))) continue;
    // breadth-first closure of one C(a)-orbit
    u64 sz = 0;
    std::queue<Perm> q;
    q.push(start);
    seen.insert(p_key(start));
    while (!q.empty()) {
      Perm x = q.front();
      q.pop();
      ++sz;
      for (const auto& c : ca.gens()) {
        Perm y = p_conj(x, c);
        if (seen.insert(p_key(y)).second) q.push(std::move(y));
      }
    }
    ++out.count;
    out.orbit_sizes.push_back(sz);
  }
  u64 total = 0;
  for (u64 s : out.orbit_sizes) total += s;
  assert(total == cls.size());
  return out;
}

SzepFactorization szep_factorization(const PermGroup& g, const Perm& a,
                                     const Perm& b) {
  if (!g.contains(a) || !g.contains(b)) throw NotInGroup("element not in group");
  u64 ca = g.centralizer(a).order();
  u64 cb = g.centralizer(b).order();
  u64 cab = g.pair_centralizer(a, b).order();
  assert(ca % cab == 0);
  SzepFactorization out;
  out.product_size = (ca / cab) * cb;
  out.factors = out.product_size == g.order();
  return out;
}

}  // namespace cforge
