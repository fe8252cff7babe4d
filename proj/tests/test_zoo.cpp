#include "cforge/zoo.hpp"

#include <map>
#include <set>

#include "doctest.h"

#include "cforge/classalg.hpp"
#include "cforge/classes.hpp"

using namespace cforge;

namespace {

// Brute-force reference: factor q^n - 1, then test each prime divisor
// directly against every lower q^m - 1.
std::optional<u64> zsig_oracle(u64 q, u32 n) {
  u64 N = 1;
  for (u32 i = 0; i < n; ++i) N *= q;
  N -= 1;
  std::vector<u64> primes;
  u64 t = N;
  for (u64 p = 2; p * p <= t; ++p)
    if (t % p == 0) {
      primes.push_back(p);
      while (t % p == 0) t /= p;
    }
  if (t > 1) primes.push_back(t);
  for (u64 l : primes) {
    bool lower = false;
    for (u32 m = 1; m < n && !lower; ++m) {
      u64 qm = 1;
      for (u32 i = 0; i < m; ++i) qm *= q;
      lower = (qm - 1) % l == 0;
    }
    if (!lower) return l;
  }
  return std::nullopt;
}

GroupMeta build(const GroupSpec& s) { return make_group(s); }

u64 order_of(const GroupSpec& s) { return build(s).group->order(); }

}  // namespace

TEST_CASE("zsigmondy matches the brute-force oracle on the full sweep") {
  for (u64 q = 2; q <= 16; ++q)
    for (u32 n = 2; n <= 12; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      CHECK(zsigmondy(q, n) == zsig_oracle(q, n));
    }
}

TEST_CASE("zsigmondy pinned examples and input validation") {
  CHECK(!zsigmondy(2, 6).has_value());
  CHECK(zsigmondy(2, 4) == 5);
  CHECK(zsigmondy(3, 5) == 11);
  CHECK(zsigmondy(2, 2) == 3);
  CHECK(!zsigmondy(3, 2).has_value());  // 8 = 2^3 and 2 | 3 - 1
  CHECK_THROWS_AS(zsigmondy(1, 5), BadSpec);
  CHECK_THROWS_AS(zsigmondy(5, 1), BadSpec);
  CHECK_THROWS_AS(zsigmondy(3, 50), BadSpec);  // past 64 bits
}

TEST_CASE("orders match published values across the zoo") {
  // Literal orders from standard tables, so the closed-form formulas and
  // the generator sets have to agree with an external source, not just
  // with each other.
  CHECK(order_of(GroupSpec::sym(5)) == 120);
  CHECK(order_of(GroupSpec::sym(9)) == 362880);
  CHECK(order_of(GroupSpec::alt(5)) == 60);
  CHECK(order_of(GroupSpec::alt(9)) == 181440);
  CHECK(order_of(GroupSpec::cyclic(7)) == 7);
  CHECK(order_of(GroupSpec::linear("GL", 2, 4)) == 180);
  CHECK(order_of(GroupSpec::linear("GL", 3, 2)) == 168);
  CHECK(order_of(GroupSpec::linear("SL", 2, 5)) == 120);
  CHECK(order_of(GroupSpec::linear("SL", 2, 9)) == 720);
  CHECK(order_of(GroupSpec::linear("PSL", 2, 7)) == 168);
  CHECK(order_of(GroupSpec::linear("PSL", 3, 3)) == 5616);
  CHECK(order_of(GroupSpec::linear("PSL", 4, 2)) == 20160);
  CHECK(order_of(GroupSpec::linear("PGL", 2, 5)) == 120);
  CHECK(order_of(GroupSpec::linear("PGL", 2, 11)) == 1320);
  CHECK(order_of(GroupSpec::linear("Sp", 4, 2)) == 720);
  CHECK(order_of(GroupSpec::linear("Sp", 4, 3)) == 51840);
  CHECK(order_of(GroupSpec::linear("PSp", 4, 3)) == 25920);
  CHECK(order_of(GroupSpec::linear("SU", 2, 3)) == 24);
  CHECK(order_of(GroupSpec::linear("SU", 3, 2)) == 216);
  CHECK(order_of(GroupSpec::linear("SU", 3, 3)) == 6048);
  CHECK(order_of(GroupSpec::linear("PSU", 3, 3)) == 6048);
  CHECK(order_of(GroupSpec::linear("GU", 3, 3)) == 24192);
  CHECK(order_of(GroupSpec::linear("SO", 3, 3)) == 24);
  CHECK(order_of(GroupSpec::linear("SO", 5, 3)) == 51840);
  CHECK(order_of(GroupSpec::explicit_name("M11")) == 7920);
  CHECK(order_of(GroupSpec::explicit_name("M12")) == 95040);
}

TEST_CASE("canonical degrees and actions") {
  auto psp = build(GroupSpec::linear("PSp", 4, 3));
  CHECK(psp.group->degree() == 40);
  CHECK(psp.group->order() == 25920);
  CHECK(psp.action == "projective 1-spaces");
  CHECK(psp.characteristic == 3);
  CHECK(psp.name == "PSp(4,3)");

  auto sl = build(GroupSpec::linear("SL", 2, 5));
  CHECK(sl.group->degree() == 24);
  CHECK(sl.action == "nonzero vectors");

  auto a5 = build(GroupSpec::alt(5));
  CHECK(a5.group->degree() == 5);
  CHECK(a5.action == "points");
  CHECK(a5.characteristic == 0);
  CHECK(!a5.has_matrices());

  auto psu = build(GroupSpec::linear("PSU", 3, 3));
  CHECK(psu.group->degree() == 91);  // 1-spaces of GF(9)^3

  auto w = build(GroupSpec::wreath(GroupSpec::alt(5), 2));
  CHECK(w.group->degree() == 10);
  CHECK(w.group->order() == 7200);
  CHECK(w.name == "A5 wr C2");

  auto dp = build(GroupSpec::direct({GroupSpec::alt(5), GroupSpec::cyclic(5)}));
  CHECK(dp.group->degree() == 10);
  CHECK(dp.group->order() == 300);
  CHECK(dp.name == "A5 x C5");
}

TEST_CASE("known coincidences line up") {
  // Sp(4,2) is S6, PSL(4,2) is A8, SU(2,3) is SL(2,3), SO(3,3) is S4:
  // orders, class counts, and simplicity must all agree.
  auto sp42 = build(GroupSpec::linear("Sp", 4, 2));
  ClassTable t_sp(sp42.group);
  ClassTable t_s6(build(GroupSpec::sym(6)).group);
  CHECK(t_sp.count() == t_s6.count());
  CHECK(!is_simple(t_sp));

  ClassTable t_a8(build(GroupSpec::alt(8)).group);
  ClassTable t_l42(build(GroupSpec::linear("PSL", 4, 2)).group);
  CHECK(t_l42.count() == t_a8.count());
  CHECK(is_simple(t_l42));

  ClassTable t_su23(build(GroupSpec::linear("SU", 2, 3)).group);
  ClassTable t_sl23(build(GroupSpec::linear("SL", 2, 3)).group);
  CHECK(t_su23.count() == t_sl23.count());

  ClassTable t_so33(build(GroupSpec::linear("SO", 3, 3)).group);
  ClassTable t_s4(build(GroupSpec::sym(4)).group);
  CHECK(t_so33.count() == t_s4.count());

  ClassTable t_m11(build(GroupSpec::explicit_name("M11")).group);
  CHECK(t_m11.count() == 10);
  CHECK(is_simple(t_m11));
  ClassTable t_m12(build(GroupSpec::explicit_name("M12")).group);
  CHECK(t_m12.count() == 15);
  CHECK(is_simple(t_m12));

  ClassTable t_su33(build(GroupSpec::linear("SU", 3, 3)).group);
  CHECK(is_simple(t_su33));  // gcd(3, q+1) = 1, so SU(3,3) = PSU(3,3)
}

TEST_CASE("generators preserve forms and determinant constraints") {
  for (auto spec : {GroupSpec::linear("Sp", 4, 3), GroupSpec::linear("SU", 3, 3),
                    GroupSpec::linear("SO", 5, 3), GroupSpec::linear("SL", 3, 4),
                    GroupSpec::linear("GU", 3, 2), GroupSpec::linear("PSp", 4, 3)}) {
    auto meta = build(spec);
    CAPTURE(meta.name);
    REQUIRE(meta.gen_mats.size() <= meta.group->gens().size());
    bool det_one = spec.family == "Sp" || spec.family == "PSp" ||
                   spec.family == "SU" || spec.family == "SL" ||
                   spec.family == "SO";
    for (const auto& m : meta.gen_mats) {
      CHECK(preserves_form(m, meta.form));
      if (det_one) CHECK(m.det() == 1);
      CHECK(m.det() != 0);
    }
  }
}

TEST_CASE("matrix to permutation bridge is a homomorphism") {
  for (auto spec : {GroupSpec::linear("SL", 2, 9), GroupSpec::linear("PSL", 3, 2),
                    GroupSpec::linear("Sp", 4, 2), GroupSpec::linear("SU", 2, 3)}) {
    auto meta = build(spec);
    CAPTURE(meta.name);
    Rng rng(99);
    const auto& mats = meta.gen_mats;
    for (int trial = 0; trial < 20; ++trial) {
      const Mat& a = mats[rng.below(mats.size())];
      const Mat& b = mats[rng.below(mats.size())];
      CHECK(mat_to_perm(meta, a * b) ==
            p_mul(mat_to_perm(meta, a), mat_to_perm(meta, b)));
    }
  }
}

TEST_CASE("permutation to matrix recovery") {
  auto sl = build(GroupSpec::linear("SL", 2, 5));
  Rng rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    Perm x = sl.group->random_element(rng);
    Mat m = perm_to_mat(sl, x);
    CHECK(mat_to_perm(sl, m) == x);
    CHECK(m.det() == 1);  // exact recovery lands back in SL
  }
  // Projective recovery returns some preimage; its image must match.
  auto psp = build(GroupSpec::linear("PSp", 4, 3));
  for (int trial = 0; trial < 10; ++trial) {
    Perm x = psp.group->random_element(rng);
    CHECK(mat_to_perm(psp, perm_to_mat(psp, x)) == x);
  }
  // A graph-automorphism coset element has no matrix preimage.
  auto ext = build(GroupSpec::aut_ext(GroupSpec::linear("GL", 2, 4), "graph-tau"));
  Perm tau = special_element(ext, "graph-involution-class-rep");
  CHECK_THROWS_AS(perm_to_mat(ext, tau), BadSpec);
  Perm inside = mat_to_perm(ext, ext.gen_mats[0]);
  CHECK(perm_to_mat(ext, inside) == ext.gen_mats[0]);
}

TEST_CASE("element classification by order in the defining characteristic") {
  auto psl = build(GroupSpec::linear("PSL", 2, 7));
  ClassTable t(psl.group);
  std::set<u64> orders;
  for (u32 i = 0; i < t.count(); ++i) orders.insert(t.element_order(i));
  CHECK(orders == std::set<u64>{1, 2, 3, 4, 7});
  for (u32 i = 0; i < t.count(); ++i) {
    ElementClass c = classify_element(psl, t.rep(i));
    u64 o = t.element_order(i);
    if (o == 7)
      CHECK(c == ElementClass::unipotent);
    else
      CHECK(c == ElementClass::semisimple);  // identity included
  }

  // SL(2,3) has order-6 elements: mixed in characteristic 3.
  auto sl23 = build(GroupSpec::linear("SL", 2, 3));
  ClassTable t2(sl23.group);
  bool saw_mixed = false;
  for (u32 i = 0; i < t2.count(); ++i)
    if (t2.element_order(i) == 6) {
      CHECK(classify_element(sl23, t2.rep(i)) == ElementClass::mixed);
      saw_mixed = true;
    }
  CHECK(saw_mixed);

  auto s5 = build(GroupSpec::sym(5));
  CHECK(classify_element(s5, p_from_cycles(5, {{0, 1}})) == ElementClass::na);

  CHECK_THROWS_AS(classify_element(psl, p_id(4)), NotInGroup);
  auto a4 = build(GroupSpec::alt(4));
  CHECK_THROWS_AS(classify_element(a4, p_from_cycles(4, {{0, 1}})), NotInGroup);

  // Class function: conjugates classify identically.
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Perm x = psl.group->random_element(rng);
    Perm g = psl.group->random_element(rng);
    CHECK(classify_element(psl, x) == classify_element(psl, p_conj(x, g)));
  }
}

TEST_CASE("special elements in symplectic groups") {
  auto sp2 = build(GroupSpec::linear("Sp", 4, 2));
  Perm t = special_element(sp2, "transvection");
  CHECK(p_order(t) == 2);
  CHECK(sp2.group->contains(t));
  Mat tm = perm_to_mat(sp2, t);
  CHECK(!form_value_vanishes(tm, sp2.form));

  Perm a2 = special_element(sp2, "a2-involution");
  CHECK(p_order(a2) == 2);
  Mat am = perm_to_mat(sp2, a2);
  CHECK(form_value_vanishes(am, sp2.form));
  // Distinct classes: the transvection moves a 1-dimensional direction
  // space, the a2 involution a 2-dimensional one.
  CHECK(!sp2.group->conjugating_element(t, a2).has_value());

  auto sp3 = build(GroupSpec::linear("Sp", 4, 3));
  Perm t3 = special_element(sp3, "transvection");
  CHECK(p_order(t3) == 3);
  Perm b = special_element(sp3, "diag-involution");
  CHECK(p_order(b) == 2);
  CHECK(sp3.group->centralizer(b).order() == 576);  // Sp(2,3) x Sp(2,3)

  CHECK_THROWS_AS(special_element(sp3, "a2-involution"), BadSpec);
  CHECK_THROWS_AS(special_element(sp2, "diag-involution"), BadSpec);
  CHECK_THROWS_AS(special_element(sp2, "no-such-tag"), BadSpec);
  auto m11 = build(GroupSpec::explicit_name("M11"));
  CHECK_THROWS_AS(special_element(m11, "transvection"), BadSpec);
}

TEST_CASE("graph automorphism extension of GL(2,4)") {
  auto ext = build(GroupSpec::aut_ext(GroupSpec::linear("GL", 2, 4), "graph-tau"));
  CHECK(ext.group->order() == 360);
  CHECK(ext.group->degree() == 30);
  CHECK(ext.action == "vectors and duals");
  CHECK(ext.name == "GL(2,4):tau");

  Perm tau = special_element(ext, "graph-involution-class-rep");
  CHECK(p_order(tau) == 2);
  CHECK(ext.group->centralizer(tau).order() == 120);  // Sp(2,4) plus tau

  // Conjugation by tau implements g -> J g^{-T} J^{-1} on the base.
  Mat J = FormSpec::symplectic_standard(ext.field, 2).gram;
  for (const auto& g : ext.gen_mats) {
    Mat img = J * g.inverse().transpose() * J.inverse();
    CHECK(p_conj(mat_to_perm(ext, g), tau) == mat_to_perm(ext, img));
  }

  Perm x = special_element(ext, "pseudoreflection-image");
  CHECK(p_order(x) == 3);
  CHECK(ext.group->centralizer(x).order() == 9);

  // The two elements give an exact factorization of the extension.
  auto f = szep_factorization(*ext.group, tau, x);
  CHECK(f.factors);
  CHECK(f.product_size == 360);
}

TEST_CASE("field automorphism extension of PSL(2,32)") {
  auto base = build(GroupSpec::linear("PSL", 2, 32));
  CHECK(base.group->order() == 32736);
  ClassTable bt(base.group);
  CHECK(bt.exponent() % 5 != 0);  // no order-5 elements inside PSL(2,32)

  auto ext = build(GroupSpec::aut_ext(GroupSpec::linear("PSL", 2, 32), "field-phi"));
  CHECK(ext.group->order() == 163680);
  CHECK(ext.group->degree() == 33);
  CHECK(ext.group->order() % 5 == 0);
  Perm phi = ext.group->gens().back();
  CHECK(p_order(phi) == 5);
  CHECK(classify_element(ext, phi) == ElementClass::semisimple);

  // Base generators stay inside the extension, and the extension really
  // adds new elements.
  for (const auto& g : base.group->gens()) CHECK(ext.group->contains(g));
  CHECK(!base.group->contains(phi));
}

TEST_CASE("diagonal extension turns PSL into PGL") {
  auto ext = build(GroupSpec::aut_ext(GroupSpec::linear("PSL", 2, 11), "diagonal"));
  CHECK(ext.group->order() == 1320);
  CHECK(ext.name == "PSL(2,11):diag");
  CHECK(ext.gen_mats.size() == ext.group->gens().size());

  // Index-1 case: PSL(2,4) already is PGL(2,4).
  auto same = build(GroupSpec::aut_ext(GroupSpec::linear("PSL", 2, 4), "diagonal"));
  CHECK(same.group->order() == 60);
}

TEST_CASE("group spec JSON round trip and schema errors") {
  auto s1 = parse_group_spec(R"({"family":"PSp","d":4,"q":3})");
  CHECK(order_of(s1) == 25920);
  auto s2 = parse_group_spec(R"({"family":"Wreath","inner":{"family":"Alt","n":5},"m":2})");
  CHECK(order_of(s2) == 7200);
  auto s3 = parse_group_spec(R"({"family":"Explicit","name":"M11"})");
  CHECK(order_of(s3) == 7920);
  auto s4 = parse_group_spec(
      R"({"family":"Aut","base":{"family":"GL","d":2,"q":4},"aut":"graph-tau"})");
  CHECK(order_of(s4) == 360);
  auto s5 = parse_group_spec(
      R"({"family":"Direct","factors":[{"family":"Alt","n":5},{"family":"Cyclic","n":5}]})");
  CHECK(order_of(s5) == 300);

  for (auto spec : {s1, s2, s3, s4, s5,
                    GroupSpec::aut_ext(GroupSpec::linear("PSL", 2, 32), "field-phi")}) {
    GroupSpec back = parse_group_spec(spec_to_json(spec));
    CHECK(spec_to_json(back) == spec_to_json(spec));
    CHECK(spec_name(back) == spec_name(spec));
  }
  CHECK(spec_name(s1) == "PSp(4,3)");
  CHECK(spec_name(s4) == "GL(2,4):tau");

  // Accepted aliases from the long-form family names.
  CHECK(parse_group_spec(R"({"family":"AutExtension","base":{"family":"PSL","d":2,"q":32},"aut":"phi"})").aut ==
        "field-phi");
  CHECK(parse_group_spec(R"({"family":"ExplicitGens","name":"M12"})").family == "Explicit");
  CHECK(parse_group_spec(R"({"family":"SOplus-odd","d":3,"q":3})").family == "SO");

  CHECK_THROWS_AS(parse_group_spec("not json"), BadSpec);
  CHECK_THROWS_AS(parse_group_spec(R"({"d":4,"q":3})"), BadSpec);
  CHECK_THROWS_AS(parse_group_spec(R"({"family":"Quaternion","n":8})"), BadSpec);
  CHECK_THROWS_AS(parse_group_spec(R"({"family":"PSL","d":2})"), BadSpec);
  CHECK_THROWS_AS(parse_group_spec(R"({"family":"PSL","d":2,"q":-7})"), BadSpec);
  CHECK_THROWS_AS(parse_group_spec(R"({"family":"Sym","n":4.5})"), BadSpec);
  CHECK_THROWS_AS(parse_group_spec(R"({"family":"Wreath","m":2})"), BadSpec);
}

TEST_CASE("bad parameters and caps") {
  CHECK_THROWS_AS(build(GroupSpec::linear("Sp", 3, 2)), BadSpec);    // odd dim
  CHECK_THROWS_AS(build(GroupSpec::linear("SO", 4, 3)), BadSpec);    // even dim
  CHECK_THROWS_AS(build(GroupSpec::linear("SO", 3, 4)), BadSpec);    // even q
  CHECK_THROWS_AS(build(GroupSpec::linear("PSL", 1, 5)), BadSpec);   // dim 1
  CHECK_THROWS_AS(build(GroupSpec::linear("PSL", 2, 6)), BadSpec);   // q not a prime power
  CHECK_THROWS_AS(build(GroupSpec::explicit_name("M24")), BadSpec);
  CHECK_THROWS_AS(build(GroupSpec::aut_ext(GroupSpec::sym(5), "field-phi")), BadSpec);
  CHECK_THROWS_AS(build(GroupSpec::aut_ext(GroupSpec::linear("GL", 3, 4), "graph-tau")),
                  BadSpec);  // odd dimension
  CHECK_THROWS_AS(build(GroupSpec::aut_ext(GroupSpec::linear("PSL", 2, 7), "frobenius")),
                  BadSpec);  // unknown tag

  CHECK_THROWS_AS(build(GroupSpec::sym(12)), SizeCapExceeded);       // 12! past 1e8
  CHECK_THROWS_AS(build(GroupSpec::linear("PSL", 2, 8192)), SizeCapExceeded);
  CHECK_THROWS_AS(build(GroupSpec::linear("GL", 5, 7)), SizeCapExceeded);
  Caps tight;
  tight.max_order = 100;
  CHECK_THROWS_AS(make_group(GroupSpec::sym(5), tight), SizeCapExceeded);
}
