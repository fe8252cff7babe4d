#include "cforge/group.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace cforge {

PermGroup::PermGroup(u32 degree, std::vector<Perm> gens, Caps caps)
    : n_(degree), caps_(caps) {
  if (degree > caps_.max_degree)
    throw SizeCapExceeded("degree " + std::to_string(degree) + " over cap");
  std::unordered_set<std::string> seen;
  for (auto& g : gens) {
    assert(g.size() == n_ && p_is_perm(g));
    if (p_is_id(g)) continue;
    if (seen.insert(p_key(g)).second) gens_.push_back(std::move(g));
  }
  build();
}

u16 PermGroup::first_moved(const std::vector<Perm>& gens) const {
  for (u32 i = 0; i < n_; ++i)
    for (const auto& g : gens)
      if (g[i] != i) return (u16)i;
  assert(false && "first_moved of trivial set");
  return 0;
}

void PermGroup::extend_level(size_t l) {
  Level& L = levels_[l];
  L.where.assign(n_, -1);
  L.orbit.clear();
  L.transversal.clear();
  L.orbit.push_back(L.point);
  L.where[L.point] = 0;
  L.transversal.push_back(p_id(n_));
  for (size_t i = 0; i < L.orbit.size(); ++i) {
    for (const auto& s : L.gens) {
      u16 img = s[L.orbit[i]];
      if (L.where[img] < 0) {
        L.where[img] = (i64)L.orbit.size();
        L.orbit.push_back(img);
        L.transversal.push_back(p_mul(L.transversal[i], s));
      }
    }
  }
}

// Bottom-up Schreier-Sims: at each level every Schreier generator must sift
// to the identity through the deeper part of the chain; failures are added
// as strong generators at the level where sifting stopped and processing
// resumes there.
void PermGroup::build() {
  levels_.clear();
  base_.clear();
  auto add_gen_to_chain = [&](const Perm& g) {
    // distribute g to every level whose preceding base points it fixes
    size_t l = 0;
    for (; l < levels_.size(); ++l) {
      levels_[l].gens.push_back(g);
      if (g[levels_[l].point] != levels_[l].point) return;
    }
    // fixes all existing base points: open a new level
    Level L;
    L.point = first_moved({g});
    levels_.push_back(std::move(L));
    base_.push_back(levels_.back().point);
    levels_.back().gens.push_back(g);
  };

  for (const auto& g : gens_) add_gen_to_chain(g);

  if (levels_.empty()) {
    order_ = 1;
    return;
  }

  i64 i = (i64)levels_.size() - 1;
  while (i >= 0) {
    extend_level((size_t)i);
    Level& L = levels_[(size_t)i];
    bool clean = true;
    for (size_t oi = 0; oi < L.orbit.size() && clean; ++oi) {
      for (const auto& s : L.gens) {
        u16 u = L.orbit[oi];
        Perm g = p_mul(L.transversal[oi], s);
        i64 tail = L.where[s[u]];
        assert(tail >= 0);
        g = p_mul(g, p_inv(L.transversal[(size_t)tail]));
        // g fixes base[0..i]; sift through deeper levels
        size_t j = (size_t)i + 1;
        for (; j < levels_.size(); ++j) {
          const Level& D = levels_[j];
          i64 w = D.where.empty() ? -1 : D.where[g[D.point]];
          if (w < 0) break;
          g = p_mul(g, p_inv(D.transversal[(size_t)w]));
        }
        if (p_is_id(g)) continue;
        if (j == levels_.size()) {
          Level NL;
          NL.point = first_moved({g});
          levels_.push_back(std::move(NL));
          base_.push_back(levels_.back().point);
        }
        for (size_t m = (size_t)i + 1; m <= j && m < levels_.size(); ++m)
          levels_[m].gens.push_back(g);
        i = (i64)j;
        clean = false;
        break;
      }
    }
    if (clean) --i;
  }

  u128 ord = 1;
  for (const auto& L : levels_) {
    ord *= L.orbit.size();
    if (ord > caps_.max_order)
      throw SizeCapExceeded("group order exceeds cap " +
                            std::to_string(caps_.max_order));
  }
  order_ = (u64)ord;
}

Perm PermGroup::sift(const Perm& x) const {
  assert(x.size() == n_);
  Perm g = x;
  for (const auto& L : levels_) {
    i64 w = L.where.empty() ? -1 : L.where[g[L.point]];
    if (w < 0) return g;
    g = p_mul(g, p_inv(L.transversal[(size_t)w]));
  }
  return g;
}

bool PermGroup::contains(const Perm& x) const {
  if (x.size() != n_) return false;
  return p_is_id(sift(x));
}

Perm PermGroup::random_element(Rng& rng) const {
  Perm x = p_id(n_);
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it)
    x = p_mul(x, it->transversal[rng.below(it->orbit.size())]);
  return x;
}

std::vector<Perm> PermGroup::elements(u64 limit) const {
  if (limit == 0) limit = caps_.max_class;
  if (order_ > limit)
    throw SizeCapExceeded("element enumeration over cap");
  std::vector<Perm> out{p_id(n_)};
  // multiply transversals from the deepest level outwards; every element
  // arises exactly once as t_(deep) * ... * t_0
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
    std::vector<Perm> next;
    next.reserve(out.size() * it->transversal.size());
    for (const auto& e : out)
      for (const auto& t : it->transversal) next.push_back(p_mul(e, t));
    out = std::move(next);
  }
  assert(out.size() == order_);
  return out;
}

std::vector<Perm> PermGroup::conjugation_orbit(const Perm& x, u64 limit) const {
  if (limit == 0) limit = caps_.max_class;
  std::vector<Perm> orbit{x};
  std::unordered_set<std::string> seen{p_key(x)};
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& s : gens_) {
      Perm y = p_conj(orbit[i], s);
      if (seen.insert(p_key(y)).second) {
        if (orbit.size() >= limit)
          throw SizeCapExceeded("conjugation orbit over cap");
        orbit.push_back(std::move(y));
      }
    }
  }
  return orbit;
}

namespace {

// Grows a subgroup from a generator stream, skipping members; used for
// stabilizer assembly out of Schreier generators.
struct SubgroupAccum {
  u32 n;
  Caps caps;
  std::vector<Perm> sel;
  std::optional<PermGroup> grp;

  SubgroupAccum(u32 n_, Caps c) : n(n_), caps(c) {}

  u64 order() const { return grp ? grp->order() : 1; }

  bool add(const Perm& g) {
    if (p_is_id(g)) return false;
    if (grp && grp->contains(g)) return false;
    sel.push_back(g);
    grp.emplace(n, sel, caps);
    return true;
  }

  PermGroup take() {
    if (!grp) return PermGroup(n, {}, caps);
    return std::move(*grp);
  }
};

}  // namespace

PermGroup PermGroup::centralizer(const Perm& x) const {
  if (!contains(x)) throw NotInGroup("centralizer: element outside group");
  // Orbit-stabilizer on the conjugation action; Schreier generators of the
  // point stabilizer of x generate the centralizer.
  std::vector<Perm> orbit{x};
  std::vector<Perm> trans{p_id(n_)};
  std::unordered_map<std::string, size_t> idx{{p_key(x), 0}};
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& s : gens_) {
      Perm y = p_conj(orbit[i], s);
      auto [it, fresh] = idx.try_emplace(p_key(y), orbit.size());
      if (fresh) {
        if (orbit.size() >= caps_.max_class)
          throw SizeCapExceeded("centralizer: class over cap");
        orbit.push_back(std::move(y));
        trans.push_back(p_mul(trans[i], s));
      }
    }
  }
  assert(order_ % orbit.size() == 0);
  u64 target = order_ / orbit.size();
  SubgroupAccum acc(n_, caps_);
  for (size_t i = 0; i < orbit.size() && acc.order() < target; ++i) {
    for (const auto& s : gens_) {
      Perm y = p_conj(orbit[i], s);
      size_t j = idx.at(p_key(y));
      Perm g = p_mul(p_mul(trans[i], s), p_inv(trans[j]));
      acc.add(g);
      if (acc.order() >= target) break;
    }
  }
  PermGroup c = acc.take();
  assert(c.order() == target);
  return c;
}

PermGroup PermGroup::pair_centralizer(const Perm& a, const Perm& b) const {
  if (!contains(a) || !contains(b))
    throw NotInGroup("pair_centralizer: element outside group");
  auto pkey = [](const Perm& x, const Perm& y) { return p_key(x) + p_key(y); };
  std::vector<std::pair<Perm, Perm>> orbit{{a, b}};
  std::vector<Perm> trans{p_id(n_)};
  std::unordered_map<std::string, size_t> idx{{pkey(a, b), 0}};
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& s : gens_) {
      Perm ya = p_conj(orbit[i].first, s);
      Perm yb = p_conj(orbit[i].second, s);
      auto [it, fresh] = idx.try_emplace(pkey(ya, yb), orbit.size());
      if (fresh) {
        if (orbit.size() >= caps_.max_class)
          throw SizeCapExceeded("pair_centralizer: orbit over cap");
        orbit.emplace_back(std::move(ya), std::move(yb));
        trans.push_back(p_mul(trans[i], s));
      }
    }
  }
  assert(order_ % orbit.size() == 0);
  u64 target = order_ / orbit.size();
  SubgroupAccum acc(n_, caps_);
  for (size_t i = 0; i < orbit.size() && acc.order() < target; ++i) {
    for (const auto& s : gens_) {
      Perm ya = p_conj(orbit[i].first, s);
      Perm yb = p_conj(orbit[i].second, s);
      size_t j = idx.at(pkey(ya, yb));
      acc.add(p_mul(p_mul(trans[i], s), p_inv(trans[j])));
      if (acc.order() >= target) break;
    }
  }
  PermGroup c = acc.take();
  assert(c.order() == target);
  return c;
}

std::optional<Perm> PermGroup::conjugating_element(const Perm& x,
                                                   const Perm& y) const {
  if (!contains(x) || !contains(y))
    throw NotInGroup("conjugating_element: element outside group");
  std::string target = p_key(y);
  if (p_key(x) == target) return p_id(n_);
  // BFS with parent pointers; the conjugator is reassembled on success.
  std::vector<Perm> orbit{x};
  std::vector<std::pair<u32, u32>> parent{{0, 0}};  // (orbit idx, gen idx)
  std::unordered_set<std::string> seen{p_key(x)};
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (u32 si = 0; si < gens_.size(); ++si) {
      Perm z = p_conj(orbit[i], gens_[si]);
      std::string k = p_key(z);
      if (!seen.insert(k).second) continue;
      if (orbit.size() >= caps_.max_class)
        throw SizeCapExceeded("conjugating_element: class over cap");
      orbit.push_back(std::move(z));
      parent.emplace_back((u32)i, si);
      if (k == target) {
        // walk back to the root collecting generators
        std::vector<u32> word;
        u32 cur = (u32)orbit.size() - 1;
        while (cur != 0) {
          word.push_back(parent[cur].second);
          cur = parent[cur].first;
        }
        Perm t = p_id(n_);
        for (auto it = word.rbegin(); it != word.rend(); ++it)
          t = p_mul(t, gens_[*it]);
        assert(p_conj(x, t) == y);
        return t;
      }
    }
  }
  return std::nullopt;
}

PermGroup PermGroup::normal_closure(const std::vector<Perm>& seeds) const {
  for (const auto& s : seeds)
    if (!contains(s)) throw NotInGroup("normal_closure: seed outside group");
  std::vector<Perm> cur;
  for (const auto& s : seeds)
    if (!p_is_id(s)) cur.push_back(s);
  PermGroup H(n_, cur, caps_);
  for (size_t i = 0; i < cur.size(); ++i) {
    for (const auto& g : gens_) {
      Perm c = p_conj(cur[i], g);
      if (!H.contains(c)) {
        cur.push_back(std::move(c));
        H = PermGroup(n_, cur, caps_);
      }
    }
  }
  return H;
}

PermGroup PermGroup::generated_subgroup(const std::vector<Perm>& elems) const {
  for (const auto& e : elems)
    if (!contains(e)) throw NotInGroup("generated_subgroup: element outside");
  return PermGroup(n_, elems, caps_);
}

PermGroup PermGroup::derived_subgroup() const {
  std::vector<Perm> comms;
  for (const auto& a : gens_)
    for (const auto& b : gens_) {
      Perm c = p_mul(p_mul(p_inv(a), p_inv(b)), p_mul(a, b));
      if (!p_is_id(c)) comms.push_back(std::move(c));
    }
  return normal_closure(comms);
}

bool PermGroup::is_solvable() const {
  PermGroup d = *this;
  u64 prev = d.order();
  while (prev > 1) {
    d = d.derived_subgroup();
    if (d.order() == prev) return false;  // perfect nontrivial group
    prev = d.order();
  }
  return true;
}

bool PermGroup::is_p_group(u64 p) const {
  u64 o = order_;
  while (o % p == 0) o /= p;
  return o == 1;
}

StructureFlags structure_flags(const PermGroup& h, u64 p) {
  return StructureFlags{h.is_p_group(p), h.is_solvable()};
}

}  // namespace cforge
