#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cforge/classes.hpp"
#include "cforge/group.hpp"
#include "cforge/matrix.hpp"

namespace cforge {

struct BadSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Family description. Which fields are meaningful depends on the family:
//   Sym / Alt / Cyclic        n
//   GL SL PSL PGL             n (dimension), q
//   GU SU PSU                 n (dimension), q; matrices live over GF(q^2)
//   Sp PSp                    n (even dimension), q
//   SO                        n (odd dimension), q odd
//   Wreath                    parts[0] (inner), m (cycle length)
//   Aut                       parts[0] (base), aut tag, k (Frobenius power)
//   Direct                    parts (two or more factors)
//   Explicit                  name ("M11" or "M12")
struct GroupSpec {
  std::string family;
  u32 n = 0;
  u64 q = 0;
  u32 m = 0;
  std::string name;
  std::string aut;  // "graph-tau" | "field-phi" | "diagonal"
  u32 k = 1;
  std::vector<GroupSpec> parts;

  static GroupSpec sym(u32 n);
  static GroupSpec alt(u32 n);
  static GroupSpec cyclic(u32 n);
  static GroupSpec linear(const std::string& family, u32 d, u64 q);
  static GroupSpec wreath(GroupSpec inner, u32 m);
  static GroupSpec aut_ext(GroupSpec base, const std::string& tag, u32 k = 1);
  static GroupSpec direct(std::vector<GroupSpec> factors);
  static GroupSpec explicit_name(const std::string& name);
};

// JSON schema: {"family":"PSp","d":4,"q":3} | {"family":"Sym","n":5} |
// {"family":"Wreath","inner":{...},"m":2} | {"family":"Explicit","name":"M11"}
// | {"family":"Aut","base":{...},"aut":"field-phi","k":1} |
// {"family":"Direct","factors":[{...},...]} | {"family":"Cyclic","n":5}.
// Throws BadSpec on malformed input.
GroupSpec parse_group_spec(const std::string& json_text);

// Canonical compact JSON (keys sorted); parse round-trips. Used as the
// cache identity of a group.
std::string spec_to_json(const GroupSpec& spec);

// Short display name like "PSp(4,3)", "A5 wr C2", "PSL(2,32):phi".
std::string spec_name(const GroupSpec& spec);

// A constructed group together with the data needed to move between its
// matrix and permutation forms. For matrix families, points[] holds the
// coordinate representative of every point of the action and gen_mats[]
// the matrix preimages of the first gen_mats.size() generators (an
// adjoined automorphism, which has no matrix, is always the last
// generator). dual_start marks where hyperplane-dual points begin in the
// graph-automorphism action; it equals points.size() when there are none.
struct GroupMeta {
  GroupSpec spec;
  std::string name;
  std::shared_ptr<const PermGroup> group;
  u64 characteristic = 0;
  std::string action;  // "points" | "projective 1-spaces" |
                       // "nonzero vectors" | "vectors and duals"
  std::shared_ptr<const Field> field;
  u32 dim = 0;
  FormSpec form;
  bool projective = false;
  std::vector<Mat> gen_mats;
  std::vector<std::vector<u32>> points;
  u32 dual_start = 0;

  bool has_matrices() const { return field != nullptr; }
};

// Builds the group on its canonical action and certifies the order
// against the closed-form family formula. Throws BadSpec for invalid
// parameters and SizeCapExceeded when degree or order leaves the caps.
GroupMeta make_group(const GroupSpec& spec, Caps caps = {});

// Permutation induced by a matrix on the meta's action. The matrix must
// be invertible over the meta's field and preserve the form.
Perm mat_to_perm(const GroupMeta& meta, const Mat& a);

// Inverse bridge. Exact on vector actions; on projective actions the
// result is a preimage, determined up to a scalar. Throws BadSpec when
// the permutation does not come from a matrix (e.g. a graph-automorphism
// coset element swaps vectors and duals).
Mat perm_to_mat(const GroupMeta& meta, const Perm& x);

enum class ElementClass { semisimple, unipotent, mixed, na };

std::string to_string(ElementClass c);

// Order-based classification in the defining characteristic p: unipotent
// iff p-power order, semisimple iff order prime to p, mixed otherwise.
// The identity reports semisimple; groups without a characteristic give
// na. Throws NotInGroup.
ElementClass classify_element(const GroupMeta& meta, const Perm& x);

// Least prime dividing q^n - 1 but no q^m - 1 with 1 <= m < n.
std::optional<u64> zsigmondy(u64 q, u32 n);

// Canonical named elements:
//   "transvection"                 Sp/PSp (symplectic, direction e_0),
//                                  GL/SL/PSL/PGL (I + E_01),
//                                  GU/SU/PSU (unitary, isotropic direction)
//   "a2-involution"                Sp/PSp in characteristic 2, dim >= 4:
//                                  a product of two transvections with
//                                  perpendicular directions; satisfies
//                                  form_value_vanishes
//   "diag-involution"              Sp/PSp, q odd: diag(-1,1,...,1,-1)
//   "graph-involution-class-rep"   the adjoined tau of a graph-tau
//                                  extension
//   "pseudoreflection-image"       diag(gamma,1,...,1) in GL or a
//                                  graph-tau extension of GL
// Throws BadSpec when the tag does not apply to the family.
Perm special_element(const GroupMeta& meta, const std::string& tag);

}  // namespace cforge
