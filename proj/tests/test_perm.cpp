#include <doctest.h>

#include "cforge/perm.hpp"

using namespace cforge;

TEST_CASE("composition applies left factor first") {
  // a = (0 1 2), b = (0 1): point 0 under a*b: 0 -a-> 1 -b-> 0
  Perm a = p_from_cycles(3, {{0, 1, 2}});
  Perm b = p_from_cycles(3, {{0, 1}});
  Perm ab = p_mul(a, b);
  CHECK(ab[0] == 0);
  CHECK(ab[1] == 2);
  CHECK(ab[2] == 1);
}

TEST_CASE("inverse and identity") {
  Perm a = p_from_cycles(5, {{0, 1, 2, 3, 4}});
  CHECK(p_is_id(p_mul(a, p_inv(a))));
  CHECK(p_is_id(p_id(5)));
  CHECK(p_pow(a, 5) == p_id(5));
  CHECK(p_pow(a, -1) == p_inv(a));
  CHECK(p_order(a) == 5);
}

TEST_CASE("conjugation matches g^-1 x g") {
  Perm x = p_from_cycles(6, {{0, 1}, {2, 3, 4}});
  Perm g = p_from_cycles(6, {{0, 5, 2}});
  CHECK(p_conj(x, g) == p_mul(p_mul(p_inv(g), x), g));
  CHECK(cycle_type(p_conj(x, g)) == cycle_type(x));
}

TEST_CASE("cycle type, parity, fixed points") {
  Perm x = p_from_cycles(7, {{0, 1}, {2, 3, 4}});
  CHECK(cycle_type(x) == std::vector<u32>{2, 3});
  CHECK(p_order(x) == 6);
  CHECK(fixed_points(x) == 2);
  CHECK_FALSE(p_even(x));  // one transposition + one 3-cycle = odd
  CHECK(p_even(p_from_cycles(4, {{0, 1}, {2, 3}})));
  CHECK(p_to_string(p_from_cycles(4, {{0, 1, 2}})) == "(0 1 2)");
  CHECK(p_to_string(p_id(3)) == "()");
}

TEST_CASE("keys are injective") {
  Perm a = p_from_cycles(300, {{0, 299}});
  Perm b = p_from_cycles(300, {{0, 298}});
  CHECK(p_key(a) != p_key(b));
  CHECK(p_key(a) == p_key(p_from_cycles(300, {{299, 0}})));
}
