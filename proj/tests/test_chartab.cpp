#include <doctest.h>

#include <algorithm>
#include <set>

#include "cforge/chartab.hpp"
#include "cforge/modmat.hpp"

using namespace cforge;

namespace {

std::shared_ptr<const PermGroup> sym(u32 n) {
  std::vector<u16> c(n);
  for (u16 i = 0; i < n; ++i) c[i] = i;
  return std::make_shared<const PermGroup>(
      n, std::vector<Perm>{p_from_cycles(n, {{0, 1}}), p_from_cycles(n, {c})});
}

std::shared_ptr<const PermGroup> alt(u32 n) {
  std::vector<u16> c;
  for (u16 i = n % 2 ? 0 : 1; i < n; ++i) c.push_back(i);
  return std::make_shared<const PermGroup>(
      n, std::vector<Perm>{p_from_cycles(n, {{0, 1, 2}}), p_from_cycles(n, {c})});
}

CharTable table_of(std::shared_ptr<const PermGroup> g) {
  return character_table(std::make_shared<const ClassTable>(std::move(g)));
}

std::multiset<u64> degrees_of(const CharTable& t) {
  std::multiset<u64> d;
  for (u32 r = 0; r < t.rows(); ++r) d.insert(t.degree(r));
  return d;
}

u64 det_mod(ModMat a, u64 p) {
  size_t n = a.size();
  u64 det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = p - det;
    }
    det = mulmod(det, a[c][c], p);
    u64 inv = invmod(a[c][c], p);
    for (size_t i = c + 1; i < n; ++i) {
      if (!a[i][c]) continue;
      u64 f = mulmod(a[i][c], inv, p);
      for (size_t j = c; j < n; ++j)
        a[i][j] = mod_sub(a[i][j], mulmod(f, a[c][j], p), p);
    }
  }
  return det % p;
}

}  // namespace

TEST_CASE("characteristic polynomials match the determinant oracle") {
  const u64 p = 101;
  Rng rng(314);
  for (size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      ModMat a(n, ModVec(n));
      for (auto& row : a)
        for (auto& x : row) x = rng.below(trial < 4 ? p : 3);
      auto cp = charpoly(a, p);
      REQUIRE(cp.size() == n + 1);
      CHECK(cp[n] == 1);  // monic
      for (u64 lam : {u64(0), u64(1), u64(17), u64(58), u64(100)}) {
        // det(lam I - a) evaluated directly by elimination
        ModMat b(n, ModVec(n, 0));
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j)
            b[i][j] =
                i == j ? mod_sub(lam, a[i][j], p) : mod_sub(0, a[i][j], p);
        CHECK(poly_eval(cp, lam, p) == det_mod(b, p));
      }
    }
}

TEST_CASE("kernels and rref") {
  const u64 p = 97;
  Rng rng(55);
  for (int trial = 0; trial < 12; ++trial) {
    size_t n = 2 + trial % 5;
    ModMat a(n, ModVec(n));
    for (auto& row : a)
      for (auto& x : row) x = rng.below(4);
    ModMat copy = a;
    auto pivots = rref(copy, p);
    auto ker = kernel_basis(a, p);
    CHECK(pivots.size() + ker.size() == n);
    for (const auto& v : ker) {
      ModVec w = mat_vec(a, v, p);
      for (u64 x : w) CHECK(x == 0);
    }
  }
}

TEST_CASE("tables of tiny groups") {
  auto c2 = std::make_shared<const PermGroup>(
      2, std::vector<Perm>{p_from_cycles(2, {{0, 1}})});
  CharTable t = table_of(c2);
  REQUIRE(t.rows() == 2);
  CHECK(degrees_of(t) == std::multiset<u64>{1, 1});
  CHECK(cyclo_as_integer(t.value(0, 0), t.ctx()) == 1);
  CHECK(cyclo_as_integer(t.value(0, 1), t.ctx()) == 1);
  CHECK(cyclo_as_integer(t.value(1, 0), t.ctx()) == 1);
  CHECK(cyclo_as_integer(t.value(1, 1), t.ctx()) == -1);

  auto triv = std::make_shared<const PermGroup>(1, std::vector<Perm>{});
  CharTable t1 = table_of(triv);
  REQUIRE(t1.rows() == 1);
  CHECK(t1.degree(0) == 1);
}

TEST_CASE("degrees of the symmetric and alternating tables") {
  CHECK(degrees_of(table_of(sym(3))) == std::multiset<u64>{1, 1, 2});
  CHECK(degrees_of(table_of(alt(4))) == std::multiset<u64>{1, 1, 1, 3});
  CHECK(degrees_of(table_of(sym(4))) == std::multiset<u64>{1, 1, 2, 3, 3});
  CHECK(degrees_of(table_of(alt(5))) == std::multiset<u64>{1, 3, 3, 4, 5});
  CHECK(degrees_of(table_of(sym(5))) ==
        std::multiset<u64>{1, 1, 4, 4, 5, 5, 6});
  CHECK(degrees_of(table_of(alt(6))) ==
        std::multiset<u64>{1, 5, 5, 8, 8, 9, 10});
  CHECK(degrees_of(table_of(sym(6))) ==
        std::multiset<u64>{1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16});
}

TEST_CASE("identity column carries the degrees") {
  CharTable t = table_of(sym(5));
  for (u32 r = 0; r < t.rows(); ++r)
    CHECK(cyclo_as_integer(t.value(r, 0), t.ctx()) == (i64)t.degree(r));
}

TEST_CASE("integer values of the S3 reflection character") {
  CharTable t = table_of(sym(3));
  const ClassTable& c = t.classes();
  u32 r2 = 2;  // rows sorted by degree: 1, 1, 2
  REQUIRE(t.degree(r2) == 2);
  u32 tr = c.identify(p_from_cycles(3, {{0, 1}}));
  u32 c3 = c.identify(p_from_cycles(3, {{0, 1, 2}}));
  CHECK(cyclo_as_integer(t.value(r2, tr), t.ctx()) == 0);
  CHECK(cyclo_as_integer(t.value(r2, c3), t.ctx()) == -1);
}

TEST_CASE("cube roots of unity in the A4 table sum to minus one") {
  CharTable t = table_of(alt(4));
  const ClassTable& c = t.classes();
  u32 c3 = c.identify(p_from_cycles(4, {{0, 1, 2}}));
  // rows 1 and 2 are the nontrivial linear characters
  REQUIRE(t.degree(1) == 1);
  REQUIRE(t.degree(2) == 1);
  Cyclo s = cyclo_add(t.value(1, c3), t.value(2, c3));
  CHECK(cyclo_equal(s, Cyclo::integer(t.conductor(), -1), t.ctx()));
  CHECK_FALSE(cyclo_as_integer(t.value(1, c3), t.ctx()).has_value());
}

TEST_CASE("golden-ratio values of the A5 degree-3 rows") {
  CharTable t = table_of(alt(5));
  const ClassTable& c = t.classes();
  u32 five = c.identify(p_from_cycles(5, {{0, 1, 2, 3, 4}}));
  REQUIRE(t.degree(1) == 3);
  REQUIRE(t.degree(2) == 3);
  // (1+sqrt5)/2 + (1-sqrt5)/2 = 1 across the two rows, exactly
  Cyclo s = cyclo_add(t.value(1, five), t.value(2, five));
  CHECK(cyclo_equal(s, Cyclo::integer(t.conductor(), 1), t.ctx()));
  // and each row separately is irrational there
  CHECK_FALSE(cyclo_as_integer(t.value(1, five), t.ctx()).has_value());
}

TEST_CASE("rows are orthonormal under the inner product") {
  for (auto g : {sym(5), alt(4)}) {
    CharTable t = table_of(g);
    for (u32 r1 = 0; r1 < t.rows(); ++r1)
      for (u32 r2 = 0; r2 < t.rows(); ++r2) {
        Rational ip =
            inner_product(t, character_row(t, r1), character_row(t, r2));
        CHECK(ip == Rational{r1 == r2 ? 1 : 0, 1});
      }
  }
}

TEST_CASE("natural permutation character of S5") {
  CharTable t = table_of(sym(5));
  auto f = to_class_function(t, fixed_point_character(t.classes()));
  auto one = character_row(t, 0);
  CHECK(inner_product(t, f, one) == Rational{1, 1});   // transitive
  CHECK(inner_product(t, f, f) == Rational{2, 1});     // 2-transitive
  // f = 1 + chi for a single degree-4 row, all multiplicities integral
  u32 found = 0;
  for (u32 r = 0; r < t.rows(); ++r) {
    Rational m = inner_product(t, f, character_row(t, r));
    REQUIRE(m.den == 1);
    REQUIRE(m.num >= 0);
    if (r == 0) continue;
    if (m.num) {
      CHECK(m.num == 1);
      CHECK(t.degree(r) == 4);
      ++found;
    }
  }
  CHECK(found == 1);
}

TEST_CASE("restriction to a subgroup and irreducibility") {
  auto s5 = sym(5);
  auto a5t = std::make_shared<const ClassTable>(alt(5));
  CharTable t5 = table_of(s5);
  FusionMap fus = class_fusion(*a5t, t5.classes());
  // the standard degree-4 character survives on A5, every degree does not...
  for (u32 r = 0; r < t5.rows(); ++r) {
    bool irr = restriction_is_irreducible(t5, *a5t, fus, r);
    if (t5.degree(r) <= 4)
      CHECK(irr);  // 1, 1, 4, 4 all restrict irreducibly
    else if (t5.degree(r) == 6)
      CHECK_FALSE(irr);  // 6 = 3 + 3 on A5
  }

  // H = G: the identity fusion keeps every row irreducible
  auto s4t = std::make_shared<const ClassTable>(sym(4));
  CharTable t4 = character_table(s4t);
  FusionMap idf = class_fusion(*s4t, *s4t);
  for (u32 r = 0; r < t4.rows(); ++r)
    CHECK(restriction_is_irreducible(t4, *s4t, idf, r));
}

TEST_CASE("the degree-16 row of S6 splits on A6") {
  auto a6t = std::make_shared<const ClassTable>(alt(6));
  CharTable t6 = table_of(sym(6));
  FusionMap fus = class_fusion(*a6t, t6.classes());
  for (u32 r = 0; r < t6.rows(); ++r) {
    if (t6.degree(r) == 16)
      CHECK_FALSE(restriction_is_irreducible(t6, *a6t, fus, r));
    if (t6.degree(r) == 5)
      CHECK(restriction_is_irreducible(t6, *a6t, fus, r));
  }
}

TEST_CASE("Steinberg rows of A5 in both defining characteristics") {
  CharTable t = table_of(alt(5));
  const ClassTable& c = t.classes();
  u32 st2 = steinberg_character(t, 2);
  CHECK(t.degree(st2) == 4);  // |A5|_2 = 4
  u32 st5 = steinberg_character(t, 5);
  CHECK(t.degree(st5) == 5);
  for (u32 j = 0; j < c.count(); ++j) {
    if (c.element_order(j) % 5 == 0)
      CHECK(cyclo_is_zero(t.value(st5, j), t.ctx()));
    else
      CHECK_FALSE(cyclo_is_zero(t.value(st5, j), t.ctx()));
  }
  // p = 3 is ambiguous for A5: both degree-3 rows vanish on 3-singular
  // classes, so identification must refuse
  CHECK_THROWS_AS(steinberg_character(t, 3), SteinbergNotIdentified);
}

TEST_CASE("nonconstancy witnesses over product supports") {
  CharTable t = table_of(alt(5));
  const ClassTable& c = t.classes();
  u32 five = c.identify(p_from_cycles(5, {{0, 1, 2, 3, 4}}));
  ProductSupport sup = product_support(c, five, five);
  REQUIRE(sup.entries.size() >= 2);
  // the trivial character is constant everywhere
  CHECK_FALSE(nonconstancy_witness(t, 0, sup).has_value());
  // the fixed-point-minus-one row is not constant on this support
  u32 chi4 = 0;
  for (u32 r = 0; r < t.rows(); ++r)
    if (t.degree(r) == 4) chi4 = r;
  auto w = nonconstancy_witness(t, chi4, sup);
  REQUIRE(w.has_value());
  CHECK_FALSE(
      cyclo_equal(t.value(chi4, w->first), t.value(chi4, w->second), t.ctx()));

  // single-class support never has a witness
  CharTable t4 = table_of(alt(4));
  u32 c3 = t4.classes().identify(p_from_cycles(4, {{0, 1, 2}}));
  ProductSupport single = product_support(t4.classes(), c3, c3);
  REQUIRE(single.entries.size() == 1);
  for (u32 r = 0; r < t4.rows(); ++r)
    CHECK_FALSE(nonconstancy_witness(t4, r, single).has_value());
}

TEST_CASE("character-formula structure constants agree with counting") {
  for (auto g : {sym(4), sym(5)}) {
    auto ct = std::make_shared<const ClassTable>(g);
    CharTable t = character_table(ct);
    for (u32 i = 0; i < ct->count(); ++i)
      for (u32 j = 0; j < ct->count(); ++j)
        for (u32 k = 0; k < ct->count(); ++k)
          CHECK(structure_constant_char(t, i, j, k) ==
                structure_constant(*ct, i, j, k));
  }
}
