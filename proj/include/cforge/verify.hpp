#pragma once

// Theorem-level verifiers. Each one sweeps the full pair range of its
// claim, records one case entry per pair, and re-checks any negative
// witness through an independent computation before reporting it. All
// sweeps run in deterministic order (class table order, BFS element
// order), so a report depends only on the group spec.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cforge/chartab.hpp"
#include "cforge/zoo.hpp"

namespace cforge {

// One swept pair. Fields beyond the class indices are verifier specific;
// unused ones keep their defaults and stay out of the JSON.
struct CaseRecord {
  u32 i = 0;
  u32 j = 0;
  i64 support = -1;               // product-support size, -1 when unused
  std::string note;               // "generic", "exception", "vacuous", ...
  std::vector<std::string> data;  // small stringified facts for the case
};

struct VerifierReport {
  std::string verifier;
  std::string spec;      // canonical group spec JSON
  std::string verdict;   // "holds" | "fails" | "exception-case"
  std::string summary;   // one line of scope facts (class counts, min support)
  std::vector<CaseRecord> cases;
  std::vector<std::string> witnesses;
  std::vector<std::string> cache_keys;  // filled by the CLI layer
  i64 elapsed_ms = 0;

  // Canonical JSON with sorted keys. Every field except elapsed_ms is
  // deterministic for a fixed spec.
  std::string to_json() const;
};

// Arad-Herzog sweep: no product of two nontrivial classes is a single
// class. Unordered pairs suffice because xy and yx are conjugate. A
// single-class witness is re-verified by a product sweep from the other
// side, plus full double enumeration when the classes are small.
VerifierReport verify_arad_herzog(const GroupMeta& meta, const ClassTable& t);

// Fixed-point-count nonconstancy for H-classes inside g = meta.group:
// for nontrivial a, b in G, the fixed-point count f is non-constant on
// a^H b^H. Since f is a G-class function, the values on a^H b^H are
// exactly {f(a y) : y in b^H}. H must act on the same points as G.
VerifierReport verify_fixed_point_nonconstancy(const GroupMeta& meta,
                                               const PermGroup& h);

// Steinberg character nonconstancy on products of nontrivial semisimple
// classes. Re-checks the defining value pattern first: St vanishes on
// p-singular classes and |St| is the p-part of the centralizer order on
// the rest.
VerifierReport verify_steinberg_nonconstancy(const GroupMeta& meta,
                                             const CharTable& ct);

// Products of two nontrivial p-element classes: either the support
// contains a non-p-element class, or the pair must match the even
// characteristic symplectic exception (long root element times a
// form-vanishing involution, d >= 4) and still cover >= 2 classes.
// p_override substitutes for the defining characteristic, for groups
// given as abstract permutation groups.
VerifierReport verify_unipotent_products(const GroupMeta& meta,
                                         const ClassTable& t,
                                         u64 p_override = 0);

// Szep sweep: G != C(a) C(b) for all nontrivial class rep pairs. A
// factorization witness is re-verified through the double coset count
// (factorization holds iff C(a)\G/C(b) is a single double coset).
VerifierReport verify_szep(const GroupMeta& meta, const ClassTable& t);

struct BsScan {
  bool all_p = true;
  // First failing pair (c, d), in sweep order: C-classes ascending with
  // the rep fixed, D-classes ascending, D-elements in BFS order.
  std::optional<std::pair<Perm, Perm>> witness;
  u64 pairs_checked = 0;
};

// Whether <c, d> is a p-group for every c in the C-classes and d in the
// D-classes. Fixing one representative per C-class suffices: conjugating
// both generators preserves the property.
BsScan bs_pair_scan(const ClassTable& t, const std::vector<u32>& cs,
                    const std::vector<u32>& ds, u64 p);

// Two-class Baer-Suzuki: for every pair of p-element classes C, D with
// <C^G> = <D^G> = H, an all-p-group pair scan forces H to be a p-group.
// Pairs with distinct closures are recorded as vacuous.
VerifierReport verify_bs_theorem(const GroupMeta& meta, const ClassTable& t,
                                 u64 p);

struct BsasProbe {
  // First class element x = d^g with <c, x> nonsolvable, if any.
  std::optional<Perm> nonsolvable_witness;
  // First class element x = d^g with c*x not a p-element, if any.
  std::optional<Perm> non_p_product_witness;
  u64 scanned = 0;  // elements of d's class examined
};

// Search d's full class in BFS order from d for the two almost-simple
// Baer-Suzuki witnesses. Requires c, d of order p.
BsasProbe bsas_probe(const ClassTable& t, const Perm& c, const Perm& d, u64 p);

// Probe sweep over unordered pairs of order-p classes (or just the given
// pair): every pair must yield both witnesses, each re-checked directly
// before it is recorded. Throws BadSpec when the group has no elements
// of order p.
VerifierReport verify_bsas(const GroupMeta& meta, const ClassTable& t, u64 p,
                           std::optional<std::pair<u32, u32>> only = {});

}  // namespace cforge
