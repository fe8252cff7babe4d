#include <doctest.h>

#include "cforge/cyclo.hpp"

using namespace cforge;

TEST_CASE("ring arithmetic in the redundant representation") {
  Cyclo a = cyclo_add(Cyclo::root_power(12, 1), Cyclo::root_power(12, 2));
  Cyclo b = cyclo_mul(a, Cyclo::root_power(12, 1));
  CHECK(b.mults[2] == 1);
  CHECK(b.mults[3] == 1);
  CHECK(b.l1_norm() == 2);
  // wraparound: zeta^11 * zeta^3 = zeta^2
  Cyclo w = cyclo_mul(Cyclo::root_power(12, 11), Cyclo::root_power(12, 3));
  CHECK(w.mults[2] == 1);
  CHECK(w.l1_norm() == 1);
  Cyclo c = cyclo_conj(Cyclo::root_power(12, 5));
  CHECK(c.mults[7] == 1);
  CHECK(cyclo_conj(Cyclo::integer(12, 4)).mults[0] == 4);
  CHECK(cyclo_sub(a, a).mults_zero());
  CHECK(cyclo_neg(Cyclo::integer(12, 3)).mults[0] == -3);
  CHECK(cyclo_scale(a, -2).mults[1] == -2);
}

TEST_CASE("vanishing sums of roots of unity are recognized as zero") {
  CycloCtx ctx(5);
  Cyclo s(5);
  for (u32 j = 0; j < 5; ++j) s.mults[j] = 1;  // 1 + z + z^2 + z^3 + z^4
  CHECK_FALSE(s.mults_zero());
  CHECK(cyclo_is_zero(s, ctx));
  s.mults[3] = 2;
  CHECK_FALSE(cyclo_is_zero(s, ctx));
}

TEST_CASE("equality across distinct mult vectors") {
  // z^2 + 1 = z in the 6th cyclotomic field
  CycloCtx ctx(6);
  Cyclo lhs = cyclo_add(Cyclo::root_power(6, 2), Cyclo::integer(6, 1));
  CHECK_FALSE(lhs.mults == Cyclo::root_power(6, 1).mults);
  CHECK(cyclo_equal(lhs, Cyclo::root_power(6, 1), ctx));
  CHECK_FALSE(cyclo_equal(lhs, Cyclo::root_power(6, 5), ctx));
  CHECK_FALSE(cyclo_equal(lhs, Cyclo::integer(6, 1), ctx));
}

TEST_CASE("integer recognition") {
  CycloCtx ctx(6);
  // (1 + z)(1 + z^-1) = 2 + z + z^5 = 3 since z + z^5 = 1 for e = 6
  Cyclo a = cyclo_add(Cyclo::integer(6, 1), Cyclo::root_power(6, 1));
  Cyclo p = cyclo_mul(a, cyclo_conj(a));
  auto v = cyclo_as_integer(p, ctx);
  REQUIRE(v.has_value());
  CHECK(*v == 3);
  CHECK(cyclo_as_integer(Cyclo::integer(6, -41), ctx) == -41);
  CHECK(cyclo_as_integer(Cyclo(6), ctx) == 0);
  CHECK_FALSE(cyclo_as_integer(Cyclo::root_power(6, 1), ctx).has_value());
}

TEST_CASE("irrational algebraic integers are rejected") {
  CycloCtx ctx(5);
  // z + z^4 = (sqrt(5) - 1) / 2, real but irrational
  Cyclo golden = cyclo_add(Cyclo::root_power(5, 1), Cyclo::root_power(5, 4));
  CHECK_FALSE(cyclo_as_integer(golden, ctx).has_value());
  // but its norm-like combination (2z + 2z^4 + 1)^2 = 5
  Cyclo s = cyclo_add(cyclo_scale(golden, 2), Cyclo::integer(5, 1));
  CHECK(cyclo_as_integer(cyclo_mul(s, s), ctx) == 5);
}

TEST_CASE("integer recognition needs several primes at large magnitude") {
  CycloCtx ctx(4);
  i64 big = 372036854775807;  // far beyond any single verification prime
  Cyclo c = Cyclo::integer(4, big);
  c.mults[1] = 7;
  c.mults[3] = 7;  // 7(i - i) cancels exactly
  c.mults[3] = 7;
  auto v = cyclo_as_integer(cyclo_add(c, cyclo_neg(Cyclo::root_power(4, 1))), ctx);
  // c - i = big + 7i + (7-1) i^3 is not an integer
  CHECK_FALSE(v.has_value());
  CHECK(cyclo_as_integer(c, ctx) == big);
}

TEST_CASE("conductor one behaves like plain integers") {
  CycloCtx ctx(1);
  CHECK(cyclo_as_integer(Cyclo::integer(1, 12), ctx) == 12);
  CHECK(cyclo_mul(Cyclo::integer(1, 3), Cyclo::integer(1, -5)).mults[0] == -15);
  CHECK(cyclo_equal(Cyclo::integer(1, 2), Cyclo::integer(1, 2), ctx));
  CHECK_FALSE(cyclo_equal(Cyclo::integer(1, 2), Cyclo::integer(1, 3), ctx));
  CHECK_THROWS(cyclo_add(Cyclo::integer(1, 1), Cyclo::integer(2, 1)));
}
