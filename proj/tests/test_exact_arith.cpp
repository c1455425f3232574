#include <doctest.h>

#include <cmath>
#include <random>

#include "egeq/exact_arith.hpp"
#include "known_solutions.hpp"

using namespace egeq;

namespace {

DyadicRational dy(long num, std::uint64_t exp) { return DyadicRational(BigInt(num), exp); }

DyadicRational random_dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> exp_dist(0, 300);
  BigInt num = 0;
  const int limbs = static_cast<int>(rng() % 4);
  for (int i = 0; i < limbs; ++i) {
    num <<= 64;
    num += static_cast<unsigned long>(rng());
  }
  return DyadicRational(num, exp_dist(rng));
}

}  // namespace

TEST_CASE("term_value normalizes a/2^a") {
  CHECK(term_value(1).num() == 1);
  CHECK(term_value(1).exp() == 1);
  CHECK(term_value(5).num() == 5);
  CHECK(term_value(5).exp() == 5);
  CHECK(term_value(6).num() == 3);
  CHECK(term_value(6).exp() == 5);
  CHECK(term_value(6).to_rational() == make_rational(6, 64));
  CHECK(term_value(64).num() == 1);
  CHECK(term_value(64).exp() == 58);
  CHECK_THROWS_AS(term_value(0), std::invalid_argument);
}

TEST_CASE("DyadicRational construction") {
  CHECK(dy(0, 17).exp() == 0);
  CHECK(dy(12, 4) == dy(3, 2));
  CHECK(dy(8, 2) == dy(2, 0));
  CHECK(dy(8, 2).num() == 2);
  CHECK(dy(3, 2).to_string() == "3/2^2");
  CHECK_THROWS_AS(dy(-1, 3), std::invalid_argument);
  CHECK(dy(1, 2) < dy(3, 3));
  CHECK(dy(1, 2) > dy(1, 3));
  CHECK(dy(3, 2).to_double() == doctest::Approx(0.75));
  CHECK(dy(3, 2).scaled_to(5) == 24);
}

TEST_CASE("dy_add") {
  CHECK(dy_add(dy(5, 5), dy(3, 5)) == dy(1, 2));
  CHECK(dy_add(dy(5, 5), DyadicRational()) == dy(5, 5));
  CHECK(dy_add(dy(5, 5), dy(5, 5)) == dy(5, 4));
}

TEST_CASE("dy_sub") {
  CHECK(dy_sub(dy(1, 2), dy(5, 5)) == dy(3, 5));
  CHECK(dy_sub(dy(5, 5), dy(5, 5)).is_zero());
  CHECK(dy_sub(dy(5, 5), dy(5, 5)).exp() == 0);
  CHECK_THROWS_AS(dy_sub(dy(5, 5), dy(1, 2)), DyadicUnderflow);
}

TEST_CASE("verify_solution") {
  CHECK(verify_solution(make_solution(4, {5, 6})));
  CHECK(verify_solution(make_solution(9, {10, 11, 13, 14})));
  CHECK_FALSE(verify_solution(make_solution(4, {5, 6, 7})));
  // invariant violations are rejected, not evaluated
  CHECK_FALSE(verify_solution(Solution{4, {BigInt(6), BigInt(5)}}));
  CHECK_FALSE(verify_solution(Solution{4, {BigInt(5)}}));
  CHECK_FALSE(verify_solution(Solution{4, {BigInt(4), BigInt(6)}}));
}

TEST_CASE("verify_solution agrees with floating point on the reference lists") {
  for (const auto& [k, listing] : testing::reference_lists()) {
    for (const auto& [n, terms] : listing) {
      const Solution s = make_solution(n, terms);
      double lhs = static_cast<double>(n) / std::ldexp(1.0, static_cast<int>(n));
      double rhs = 0;
      for (auto a : terms) rhs += static_cast<double>(a) / std::ldexp(1.0, static_cast<int>(a));
      const bool float_ok = std::abs(lhs - rhs) <= 1e-9 * lhs;
      CAPTURE(s.to_string());
      CHECK(verify_solution(s));
      CHECK(float_ok);
    }
  }
}

TEST_CASE("invert_term") {
  CHECK(invert_term(dy(5, 5)) == 5u);
  CHECK(invert_term(dy(3, 5)) == 6u);
  CHECK_FALSE(invert_term(dy(7, 5)).has_value());
  CHECK(invert_term(dy(1, 1)) == 1u);
  CHECK(invert_term_all(dy(1, 1)) == std::vector<std::uint64_t>{1, 2});
  CHECK_FALSE(invert_term(DyadicRational()).has_value());
}

TEST_CASE("invert_term inverts term_value for 3 <= a <= 10^4") {
  for (std::uint64_t a = 3; a <= 10000; ++a) {
    const auto back = invert_term(term_value(a));
    REQUIRE(back.has_value());
    REQUIRE(*back == a);
  }
}

TEST_CASE("term_value strictly decreases from 3 on") {
  CHECK(term_value(1) == term_value(2));
  CHECK(term_value(2) > term_value(3));
  for (std::uint64_t a = 3; a < 2000; ++a) REQUIRE(term_value(a) > term_value(a + 1));
}

TEST_CASE("add/sub round trip on random dyadics") {
  std::mt19937_64 rng(20240517);
  for (int i = 0; i < 2000; ++i) {
    const DyadicRational x = random_dyadic(rng);
    const DyadicRational y = random_dyadic(rng);
    REQUIRE(dy_sub(dy_add(x, y), y) == x);
    REQUIRE(dy_add(x, y) == dy_add(y, x));
    REQUIRE(dy_add(x, y).to_rational() == x.to_rational() + y.to_rational());
    const DyadicRational sum = dy_add(x, y);
    REQUIRE((sum.exp() == 0 || mpz_odd_p(sum.num().get_mpz_t())));
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/32") == Rational(1, 32));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("3") == Rational(3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(make_rational(4, -6) == Rational(-2, 3));
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("FixedPointSum matches big-integer shifts") {
  std::mt19937_64 rng(7);
  FixedPointSum acc;
  BigInt expected = 0;
  for (int i = 0; i < 5000; ++i) {
    const std::uint64_t value = rng();
    const std::uint64_t shift = rng() % 1000;
    acc.add(value, shift);
    BigInt term = static_cast<unsigned long>(value);
    term <<= shift;
    expected += term;
  }
  BigInt wide("123456789012345678901234567890123456789");
  acc.add(wide, 77);
  expected += wide << 77;
  CHECK(acc.to_bigint() == expected);
  CHECK_FALSE(acc.is_zero());
  CHECK(FixedPointSum().is_zero());
}

TEST_CASE("representation_equals") {
  const std::vector<std::uint64_t> terms{5, 6};
  CHECK(representation_equals(terms, term_value(4)));
  CHECK(representation_equals(terms, Rational(1, 4)));
  CHECK_FALSE(representation_equals(terms, Rational(1, 3)));
  const std::vector<std::uint64_t> greedy41{42, 43, 44, 45, 47, 49, 54, 55, 56, 61, 66, 68, 69, 70};
  CHECK(representation_equals(greedy41, term_value(41)));
}

TEST_CASE("Solution text form") {
  const Solution s = make_solution(9, {10, 11, 13, 14});
  CHECK(s.to_string() == "9;10,11,13,14");
  CHECK(s.k() == 4);
  CHECK(make_solution(4, {5, 6}) < s);
}
