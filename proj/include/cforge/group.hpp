#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "cforge/perm.hpp"

namespace cforge {

struct Caps {
  u32 max_degree = 5000;
  u64 max_order = 100000000;     // 1e8
  u64 max_class = 5000000;       // 5e6 enumerated class elements
};

struct SizeCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Permutation group with a base and strong generating set built by a
// deterministic Schreier-Sims (base points are always the first moved
// point at each level). Immutable once constructed.
class PermGroup {
 public:
  PermGroup(u32 degree, std::vector<Perm> gens, Caps caps = {});

  u32 degree() const { return n_; }
  const std::vector<Perm>& gens() const { return gens_; }
  const std::vector<u16>& base() const { return base_; }
  u64 order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }
  const Caps& caps() const { return caps_; }

  bool contains(const Perm& x) const;
  // Residue of sifting x through the chain; identity iff x is a member.
  Perm sift(const Perm& x) const;

  // Uniformly random element (product of uniformly chosen coset reps).
  Perm random_element(Rng& rng) const;

  // All elements in deterministic order. Throws SizeCapExceeded if the
  // order exceeds limit (default: the group's class cap).
  std::vector<Perm> elements(u64 limit = 0) const;

  // Centralizer of x, via orbit-stabilizer on the conjugation action:
  // Schreier generators of the stabilizer of x are collected until the
  // known order |G|/|x^G| is reached.
  PermGroup centralizer(const Perm& x) const;

  // Simultaneous centralizer of a and b (stabilizer of the pair).
  PermGroup pair_centralizer(const Perm& a, const Perm& b) const;

  // Some t with x^t = y, or nullopt when x, y are not conjugate in the
  // group. BFS over the conjugation orbit of x.
  std::optional<Perm> conjugating_element(const Perm& x, const Perm& y) const;

  // Smallest normal subgroup containing the seeds.
  PermGroup normal_closure(const std::vector<Perm>& seeds) const;

  PermGroup generated_subgroup(const std::vector<Perm>& elems) const;

  PermGroup derived_subgroup() const;
  bool is_solvable() const;
  bool is_p_group(u64 p) const;

  // Conjugation orbit of x, in BFS order (x first). Throws SizeCapExceeded
  // past the limit (0 = the group's class cap).
  std::vector<Perm> conjugation_orbit(const Perm& x, u64 limit = 0) const;

 private:
  struct Level {
    u16 point;
    std::vector<Perm> gens;              // strong generators active here
    std::vector<i64> where;              // point -> index into orbit, -1 if out
    std::vector<u16> orbit;              // BFS order
    std::vector<Perm> transversal;       // transversal[i]: point^t = orbit[i]
  };

  u32 n_;
  std::vector<Perm> gens_;
  Caps caps_;
  std::vector<u16> base_;
  std::vector<Level> levels_;
  u64 order_;

  void build();
  void extend_level(size_t l);
  bool sift_and_add(Perm x, size_t start);
  u16 first_moved(const std::vector<Perm>& gens) const;
};

struct StructureFlags {
  bool is_p_group;
  bool is_solvable;
};

StructureFlags structure_flags(const PermGroup& h, u64 p);

}  // namespace cforge
