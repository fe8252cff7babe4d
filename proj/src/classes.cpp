#include "cforge/classes.hpp"

#include <algorithm>
#include <unordered_set>

namespace cforge {

std::vector<u64> ClassTable::element_fingerprint(const Perm& x) {
  std::vector<u64> fp;
  u64 ord = p_order(x);
  fp.push_back(ord);
  auto push_type = [&fp](const Perm& y) {
    fp.push_back(0xFFFFFFFFull);  // separator
    for (u32 len : cycle_type(y)) fp.push_back(len);
  };
  push_type(x);
  for (auto [m, e] : factorize(ord)) {
    (void)e;
    push_type(p_pow(x, (i64)m));
  }
  return fp;
}

ClassTable::ClassTable(std::shared_ptr<const PermGroup> g, u64 element_map_cap)
    : g_(std::move(g)) {
  build(element_map_cap);
}

void ClassTable::build(u64 element_map_cap) {
  const PermGroup& G = *g_;
  u64 N = G.order();
  // The per-element map costs roughly 60 bytes per group element, so the
  // default cap keeps the largest tables (S9-sized) around tens of MB.
  bool with_map = N <= element_map_cap;

  struct Found {
    Perm rep;
    u64 size;
    u64 order;
    std::vector<u64> fp;
  };
  std::vector<Found> found;
  u64 covered = 0;

  // deterministic candidate stream: identity, generators, then powers of
  // discovered reps, then seeded random elements
  std::vector<Perm> queue{p_id(G.degree())};
  for (const auto& s : G.gens()) queue.push_back(s);
  Rng rng(0xC1A55E5u);
  size_t qpos = 0;

  auto known = [&](const Perm& x) -> bool {
    if (with_map) return element_class_.count(p_key(x)) > 0;
    auto fp = element_fingerprint(x);
    for (const auto& f : found) {
      if (f.fp != fp) continue;
      if (G.conjugating_element(x, f.rep).has_value()) return true;
    }
    return false;
  };

  while (covered < N) {
    Perm x = qpos < queue.size() ? queue[qpos++] : G.random_element(rng);
    if (known(x)) continue;
    auto orbit = G.conjugation_orbit(x);
    if (with_map) {
      u32 tag = (u32)found.size();
      for (const auto& y : orbit) element_class_.emplace(p_key(y), tag);
    }
    u64 ord = p_order(x);
    found.push_back({x, orbit.size(), ord, element_fingerprint(x)});
    covered += orbit.size();
    assert(N % orbit.size() == 0);
    // powers reach the classes of cyclic subgroups quickly
    for (u64 t = 2; t < ord; ++t) queue.push_back(p_pow(x, (i64)t));
  }

  // final order: (element order, size, fingerprint), discovery order on ties
  std::vector<u32> perm_idx(found.size());
  for (u32 i = 0; i < found.size(); ++i) perm_idx[i] = i;
  std::stable_sort(perm_idx.begin(), perm_idx.end(), [&](u32 a, u32 b) {
    const Found &A = found[a], &B = found[b];
    if (A.order != B.order) return A.order < B.order;
    if (A.size != B.size) return A.size < B.size;
    return A.fp < B.fp;
  });

  std::vector<u32> new_tag(found.size());
  exponent_ = 1;
  for (u32 ni = 0; ni < perm_idx.size(); ++ni) {
    const Found& f = found[perm_idx[ni]];
    new_tag[perm_idx[ni]] = ni;
    reps_.push_back(f.rep);
    sizes_.push_back(f.size);
    orders_.push_back(f.order);
    fingerprints_.push_back(f.fp);
    exponent_ = std::lcm(exponent_, f.order);
  }
  if (with_map)
    for (auto& [k, v] : element_class_) v = new_tag[v];

  inverse_map_.resize(reps_.size());
  for (u32 i = 0; i < reps_.size(); ++i)
    inverse_map_[i] = identify(p_inv(reps_[i]));
  for (u32 i = 0; i < reps_.size(); ++i)
    assert(inverse_map_[inverse_map_[i]] == i);
}

u32 ClassTable::identify(const Perm& x) const {
  if (!element_class_.empty()) {
    auto it = element_class_.find(p_key(x));
    if (it == element_class_.end())
      throw NotInGroup("identify: element outside group");
    return it->second;
  }
  auto fp = element_fingerprint(x);
  u32 candidate = count();
  u32 nmatch = 0;
  for (u32 i = 0; i < count(); ++i)
    if (fingerprints_[i] == fp) {
      candidate = i;
      ++nmatch;
    }
  if (nmatch == 0) throw NotInGroup("identify: no matching class");
  if (nmatch == 1) return candidate;
  for (u32 i = 0; i < count(); ++i)
    if (fingerprints_[i] == fp &&
        g_->conjugating_element(x, reps_[i]).has_value())
      return i;
  throw NotInGroup("identify: element outside group");
}

u32 ClassTable::power_class(u32 i, u64 t) const {
  u64 ord = orders_[i];
  t %= ord;
  if (t == 0) return 0;
  if (t == 1) return i;
  u64 key = (u64)i * (exponent_ + 1) + t;
  auto it = power_memo_.find(key);
  if (it != power_memo_.end()) return it->second;
  u32 c = identify(p_pow(reps_[i], (i64)t));
  power_memo_.emplace(key, c);
  return c;
}

std::vector<u32> ClassTable::prime_power_map(u64 m) const {
  std::vector<u32> out(count());
  for (u32 i = 0; i < count(); ++i) out[i] = power_class(i, m % orders_[i]);
  return out;
}

std::vector<Perm> ClassTable::class_elements(u32 i) const {
  return g_->conjugation_orbit(reps_[i]);
}

FusionMap class_fusion(const ClassTable& h, const ClassTable& g) {
  if (h.group().degree() != g.group().degree())
    throw NotASubgroup("class_fusion: degree mismatch");
  for (const auto& x : h.group().gens())
    if (!g.group().contains(x))
      throw NotASubgroup("class_fusion: generator outside the big group");
  FusionMap f;
  f.to_g.resize(h.count());
  for (u32 i = 0; i < h.count(); ++i) f.to_g[i] = g.identify(h.rep(i));
  return f;
}

bool is_simple(const ClassTable& t) {
  const PermGroup& G = t.group();
  if (G.order() == 1) return false;
  for (u32 i = 1; i < t.count(); ++i)
    if (G.normal_closure({t.rep(i)}).order() != G.order()) return false;
  return true;
}

}  // namespace cforge
