#pragma once

// Exact irreducible character tables by the modular eigenvector method:
// class-sum matrices act on F_ell^k, their common eigenspaces are split to
// one dimension, degrees come from the orthogonality norm, and values are
// lifted to cyclotomic integers through eigenvalue-multiplicity transforms
// over the power maps. Inner products, restriction tests, fixed-point and
// Steinberg characters build on the finished table.

#include <memory>
#include <optional>
#include <utility>

#include "cforge/classalg.hpp"
#include "cforge/cyclo.hpp"

namespace cforge {

struct SteinbergNotIdentified : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// reduced fraction; den = 1 for the integer results all callers rely on
struct Rational {
  i64 num = 0;
  u64 den = 1;
  bool is_integer() const { return den == 1; }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
};

class CharTable {
 public:
  const ClassTable& classes() const { return *t_; }
  std::shared_ptr<const ClassTable> classes_ptr() const { return t_; }
  u32 rows() const { return (u32)degrees_.size(); }
  u64 degree(u32 r) const { return degrees_[r]; }
  const Cyclo& value(u32 r, u32 j) const { return values_[r][j]; }
  u32 conductor() const { return e_; }
  u64 lifting_prime() const { return ell_; }
  u64 verification_prime(size_t i) const { return ctx_->prime(i).p; }
  const CycloCtx& ctx() const { return *ctx_; }

 private:
  friend CharTable character_table(std::shared_ptr<const ClassTable> t);
  std::shared_ptr<const ClassTable> t_;
  u32 e_ = 1;
  u64 ell_ = 0;
  std::vector<u64> degrees_;
  std::vector<std::vector<Cyclo>> values_;
  std::shared_ptr<CycloCtx> ctx_;
};

// caps at 200 classes (SizeCapExceeded beyond)
CharTable character_table(std::shared_ptr<const ClassTable> t);

// one table row as a class function
std::vector<Cyclo> character_row(const CharTable& t, u32 r);

// integer class function promoted to the table's conductor
std::vector<Cyclo> to_class_function(const CharTable& t,
                                     const std::vector<i64>& vals);

// (1/|G|) sum_k |C_k| phi(g_k) psi(g_k^-1), exact
Rational inner_product(const CharTable& t, const std::vector<Cyclo>& phi,
                       const std::vector<Cyclo>& psi);

// whether row chi of the big table stays irreducible on the subgroup whose
// class table is htab, with classes glued by fusion
bool restriction_is_irreducible(const CharTable& gtab, const ClassTable& htab,
                                const FusionMap& fusion, u32 chi);

// fixed points of each class representative in the natural action
std::vector<i64> fixed_point_character(const ClassTable& t);

// the unique row of degree |G|_p vanishing on all p-singular classes
u32 steinberg_character(const CharTable& t, u64 p);

// two support classes where row chi takes different values, if any
std::optional<std::pair<u32, u32>> nonconstancy_witness(
    const CharTable& t, u32 chi, const ProductSupport& support);

// a_ijk through the character formula; must agree with direct counting
u64 structure_constant_char(const CharTable& t, u32 i, u32 j, u32 k);

}  // namespace cforge
