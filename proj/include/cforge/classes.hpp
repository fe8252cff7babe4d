#pragma once

#include <memory>
#include <unordered_map>

#include "cforge/group.hpp"

namespace cforge {

struct NotASubgroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conjugacy class data for a permutation group. Classes are ordered by
// (element order, size, fingerprint), ties kept in discovery order, which
// makes the table deterministic for a fixed generator list. Class 0 is
// always the identity.
class ClassTable {
 public:
  // element_map_cap: largest group order for which the per-element class
  // map is kept (O(1) identify). Pass 0 to force the fingerprint +
  // transporter fallback.
  explicit ClassTable(std::shared_ptr<const PermGroup> g,
                      u64 element_map_cap = 1000000);

  const PermGroup& group() const { return *g_; }
  std::shared_ptr<const PermGroup> group_ptr() const { return g_; }

  u32 count() const { return (u32)reps_.size(); }
  const Perm& rep(u32 i) const { return reps_[i]; }
  u64 size(u32 i) const { return sizes_[i]; }
  u64 centralizer_order(u32 i) const { return g_->order() / sizes_[i]; }
  u64 element_order(u32 i) const { return orders_[i]; }
  const std::vector<u64>& fingerprint(u32 i) const { return fingerprints_[i]; }
  u64 exponent() const { return exponent_; }

  // Class index of an arbitrary group element. O(1) when the element map
  // is present, fingerprint + transporter search otherwise.
  u32 identify(const Perm& x) const;

  // Class of rep(i)^t (memoized).
  u32 power_class(u32 i, u64 t) const;
  u32 inverse_class(u32 i) const { return inverse_map_[i]; }
  // Class index map i -> class of rep(i)^m.
  std::vector<u32> prime_power_map(u64 m) const;

  bool has_element_map() const { return !element_class_.empty(); }

  // Full enumeration of class i in BFS order (first entry rep(i)).
  std::vector<Perm> class_elements(u32 i) const;

  // Shared shape data of an element: order, cycle type, cycle types of
  // prime-power images. Equal on conjugates.
  static std::vector<u64> element_fingerprint(const Perm& x);

 private:
  std::shared_ptr<const PermGroup> g_;
  std::vector<Perm> reps_;
  std::vector<u64> sizes_;
  std::vector<u64> orders_;
  std::vector<std::vector<u64>> fingerprints_;
  std::vector<u32> inverse_map_;
  u64 exponent_;
  std::unordered_map<std::string, u32> element_class_;
  mutable std::unordered_map<u64, u32> power_memo_;

  void build(u64 element_map_cap);
};

struct FusionMap {
  // H-class index -> G-class index
  std::vector<u32> to_g;
};

// Fusion of the classes of h into the classes of g; h must be a subgroup
// of g acting on the same points.
FusionMap class_fusion(const ClassTable& h, const ClassTable& g);

// Every nontrivial class normally generates the whole group.
bool is_simple(const ClassTable& t);

}  // namespace cforge
