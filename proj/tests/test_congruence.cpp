#include <doctest.h>

#include <map>
#include <random>

#include "egeq/congruence.hpp"

using namespace egeq;

namespace {

struct ReferenceRow {
  unsigned u;
  const char* k0;
  const char* r;
};

const std::vector<ReferenceRow> kReference{
    {0, "4", "4"},
    {1, "5", "12"},
    {2, "22", "28"},
    {3, "48", "60"},
    {4, "83", "100"},
    {6, "221", "508"},
    {9, "242", "4092"},
    {11, "5531", "16380"},
    {17, "66328", "1048572"},
    {21, "2796185", "5592404"},
    {22, "775376", "1116130"},
    {26, "96489490", "536870908"},
    {55, "5843993308712118", "26202761468337430"},
    {99, "364550281031913286431277811782", "2535300206192230667655098198606"},
    {113, "2452672773763126728478631379525174", "83076749736557242056487941267521532"},
    {119, "3303995011423016739508338720636484139", "5316911983139663491615228241121378300"},
};

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m;
  unsigned __int128 x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

Factorization factors(std::initializer_list<std::pair<const char*, unsigned>> items) {
  Factorization out;
  for (const auto& [p, e] : items) out.emplace_back(BigInt(p), e);
  return out;
}

}  // namespace

TEST_CASE("family_n") {
  CHECK(family_n(0, 4) == BigInt(9));
  CHECK(family_n(1, 5) == BigInt(15));
  CHECK_FALSE(family_n(0, 5).has_value());
  CHECK_THROWS_AS(family_n(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(family_n(0, kFamilyExactLimit + 1), std::length_error);
}

TEST_CASE("family_solution") {
  const auto s04 = family_solution(0, 4);
  REQUIRE(s04.has_value());
  CHECK(*s04 == make_solution(9, {10, 11, 13, 14}));
  CHECK(verify_solution(*s04));

  const auto s15 = family_solution(1, 5);
  REQUIRE(s15.has_value());
  CHECK(*s15 == make_solution(15, {16, 17, 18, 21, 22}));
  CHECK(verify_solution(*s15));

  const auto s222 = family_solution(2, 22);
  REQUIRE(s222.has_value());
  CHECK(s222->n == *family_n(2, 22));
  CHECK(verify_solution(*s222));

  CHECK_FALSE(family_solution(0, 5).has_value());
}

TEST_CASE("congruence_holds matches exact divisibility") {
  for (unsigned u = 0; u <= 12; ++u) {
    for (std::uint64_t k = 2; k <= 300; ++k) {
      const BigInt modulus = congruence_modulus(u);
      BigInt numerator = 3 * (BigInt(1) << (k - 1)) + 3 * u + 1;
      REQUIRE(congruence_holds(u, BigInt(static_cast<unsigned long>(k))) == (numerator % modulus == 0));
    }
  }
  CHECK_THROWS_AS(congruence_holds(0, BigInt(0)), std::invalid_argument);
}

TEST_CASE("mult_order") {
  CHECK(mult_order(BigInt(5)) == 4);
  CHECK(mult_order(BigInt(13)) == 12);
  CHECK(mult_order((BigInt(1) << 29) - 3) == BigInt("536870908"));
  CHECK_THROWS_AS(mult_order(BigInt(12)), std::invalid_argument);
  CHECK_THROWS_AS(mult_order(BigInt(1) << 40 | 1), UnsupportedModulus);
  CHECK(mult_order_iterative(5) == 4);
  CHECK(mult_order_iterative(13) == 12);
  CHECK_THROWS_AS(mult_order_iterative(8), std::invalid_argument);
}

TEST_CASE("factored and iterative orders agree") {
  for (std::uint64_t m = 3; m < 20000; m += 2) {
    CAPTURE(m);
    REQUIRE(mult_order(BigInt(static_cast<unsigned long>(m))) == mult_order_iterative(m));
  }
  for (unsigned u = 0; u <= 18; ++u) {
    const BigInt m = congruence_modulus(u);
    REQUIRE(mult_order(m) == mult_order_iterative(m.get_ui()));
  }
}

TEST_CASE("mult_order with a supplied multiple") {
  // 2^29 - 3 has order 536870908 = 2^2 * 134217727, lambda-style multiple
  const BigInt m = congruence_modulus(26);
  CHECK(mult_order(m, factor_trial_division(536870908ULL * 6)) == BigInt("536870908"));
  CHECK_THROWS_AS(mult_order(m, factors({{"7", 1}})), std::invalid_argument);
}

TEST_CASE("factor_trial_division") {
  CHECK(factor_trial_division(1).empty());
  const auto f = factor_trial_division(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::make_pair(BigInt(2), 3u));
  CHECK(f[1] == std::make_pair(BigInt(3), 2u));
  CHECK(f[2] == std::make_pair(BigInt(5), 1u));
  CHECK(factor_trial_division(4294967291ULL).size() == 1);
}

TEST_CASE("bsgs_dlog") {
  CHECK(bsgs_dlog(BigInt(1), BigInt(13), BigInt(12)) == BigInt(0));
  CHECK(bsgs_dlog(BigInt(powmod_u64(2, 17, 13)), BigInt(13), BigInt(12)) == BigInt(5));
  // 2 is a primitive root mod 13, so 7 = 2^11.
  CHECK(bsgs_dlog(BigInt(7), BigInt(13), BigInt(12)) == BigInt(11));
  // modulo 7 the powers of 2 are {1, 2, 4}.
  CHECK_FALSE(bsgs_dlog(BigInt(3), BigInt(7), BigInt(3)).has_value());
  CHECK_THROWS_AS(bsgs_dlog(BigInt(3), BigInt(7), BigInt(0)), std::invalid_argument);
  CHECK_THROWS_AS(bsgs_dlog(BigInt(3), BigInt(7), BigInt(1) << 60), UnsupportedModulus);
}

TEST_CASE("bsgs_dlog agrees with an exhaustive scan for moduli below 10^4") {
  std::mt19937_64 rng(11);
  for (std::uint64_t m = 3; m < 10000; m += 2) {
    const std::uint64_t order = mult_order_iterative(m);
    std::vector<std::int64_t> first(m, -1);
    std::uint64_t x = 1;
    for (std::uint64_t e = 0; e < order; ++e) {
      if (first[x] < 0) first[x] = static_cast<std::int64_t>(e);
      x = x * 2 % m;
    }
    const BigInt big_m = static_cast<unsigned long>(m);
    const BigInt big_order = static_cast<unsigned long>(order);
    std::vector<std::uint64_t> targets;
    if (m < 400) {
      for (std::uint64_t t = 1; t < m; ++t) targets.push_back(t);
    } else {
      for (int i = 0; i < 12; ++i) targets.push_back(1 + rng() % (m - 1));
    }
    for (auto t : targets) {
      const auto got = bsgs_dlog(BigInt(static_cast<unsigned long>(t)), big_m, big_order);
      CAPTURE(m);
      CAPTURE(t);
      if (first[t] < 0) {
        REQUIRE_FALSE(got.has_value());
      } else {
        REQUIRE(got.has_value());
        REQUIRE(*got == BigInt(static_cast<long>(first[t])));
      }
    }
  }
}

TEST_CASE("solve_congruence") {
  CHECK(solve_congruence(2) == ProgressionRow{2, 22, 28});
  CHECK(solve_congruence(3) == ProgressionRow{3, 48, 60});
  CHECK_FALSE(solve_congruence(5).has_value());
  CHECK_THROWS_AS(solve_congruence(40), UnsupportedModulus);
  CHECK(solve_congruence(55)->origin == RowOrigin::kVerifiedConstant);
}

TEST_CASE("computed rows match the reference table and no others exist up to 26") {
  std::map<unsigned, ReferenceRow> reference;
  for (const auto& row : kReference) reference[row.u] = row;
  for (unsigned u = 0; u <= 31; ++u) {
    CAPTURE(u);
    const auto row = solve_congruence(u);
    const auto it = reference.find(u);
    if (it == reference.end()) {
      REQUIRE_FALSE(row.has_value());
    } else {
      REQUIRE(row.has_value());
      CHECK(row->k0 == BigInt(it->second.k0));
      CHECK(row->r == BigInt(it->second.r));
      CHECK(row->origin == RowOrigin::kComputed);
    }
  }
}

TEST_CASE("embedded rows pass the modular checks") {
  REQUIRE(embedded_rows().size() == 4);
  for (const auto& row : embedded_rows()) {
    CHECK(verify_row(row));
    bool listed = false;
    for (const auto& p : kReference) {
      if (p.u == row.u) listed = row.k0 == BigInt(p.k0) && row.r == BigInt(p.r);
    }
    CHECK(listed);
  }
  ProgressionRow broken = embedded_rows()[0];
  broken.k0 += 1;
  CHECK_FALSE(verify_row(broken));
}

TEST_CASE("progressions stay valid along k0 + t r") {
  for (const auto& row : table1_rows()) {
    for (unsigned long t = 0; t <= 2; ++t) {
      const BigInt k = row.k0 + t * row.r;
      if (k < 2) continue;
      REQUIRE(congruence_holds(row.u, k));
      if (k.fits_ulong_p() && k.get_ui() <= 4096) {
        const auto n = family_n(row.u, k.get_ui());
        REQUIRE(n.has_value());
        if (*n < 1000000) REQUIRE(verify_solution(*family_solution(row.u, k.get_ui())));
      }
    }
  }
}

TEST_CASE("family_n is integral at every computed k0 within the exact limit") {
  for (const auto& row : table1_rows()) {
    if (row.k0 < 2 || row.k0 > 1000000) continue;
    CAPTURE(row.u);
    CHECK(family_n(row.u, row.k0.get_ui()).has_value());
  }
}

TEST_CASE("Pohlig-Hellman reproduces computed rows and the u = 55 constant") {
  // r_55 = 2 * 5 * 6596077 * 397247659
  const auto row55 = solve_congruence(55, factors({{"2", 1}, {"5", 1}, {"6596077", 1}, {"397247659", 1}}));
  REQUIRE(row55.has_value());
  CHECK(row55->k0 == BigInt("5843993308712118"));
  CHECK(row55->r == BigInt("26202761468337430"));

  for (unsigned u : {2u, 9u, 17u, 22u, 26u}) {
    const BigInt lambda = mult_order(congruence_modulus(u));
    const auto via_ph = solve_congruence(u, factor_trial_division(lambda.get_ui()));
    CHECK(via_ph == solve_congruence(u));
  }
  CHECK_FALSE(solve_congruence(5, factor_trial_division(mult_order(congruence_modulus(5)).get_ui())).has_value());

  // r_113 has only small factors
  const auto row113 = solve_congruence(
      113, factors({{"2", 2}, {"3", 2}, {"7", 1}, {"571", 1}, {"32377", 1}, {"174763", 1}, {"524287", 1},
                    {"1212847", 1}, {"160465489", 1}}));
  REQUIRE(row113.has_value());
  CHECK(row113->k0 == BigInt("2452672773763126728478631379525174"));
  CHECK(row113->r == BigInt("83076749736557242056487941267521532"));
}

TEST_CASE("pohlig_hellman_dlog agrees with bsgs") {
  std::mt19937_64 rng(5);
  for (unsigned u = 0; u <= 20; ++u) {
    const BigInt m = congruence_modulus(u);
    const BigInt r = mult_order(m);
    const Factorization f = factor_trial_division(r.get_ui());
    for (int i = 0; i < 10; ++i) {
      BigInt t = static_cast<unsigned long>(1 + rng() % (m.get_ui() - 1));
      REQUIRE(pohlig_hellman_dlog(t, m, r, f) == bsgs_dlog(t, m, r));
    }
  }
  CHECK_THROWS_AS(pohlig_hellman_dlog(BigInt(2), BigInt(13), BigInt(12), factors({{"2", 1}})),
                  std::invalid_argument);
}

TEST_CASE("table1") {
  const auto small = table1(11);
  std::vector<unsigned> us;
  for (const auto& e : small) us.push_back(e.u);
  CHECK(us == std::vector<unsigned>{0, 1, 2, 3, 4, 6, 9, 11});

  const auto full = table1(120, 4);
  std::size_t solvable = 0;
  std::size_t unsupported = 0;
  for (const auto& e : full) {
    if (e.row) ++solvable;
    if (e.status == TableStatus::kUnsupported) ++unsupported;
  }
  CHECK(solvable == 16);
  CHECK(unsupported == 120 - 31 - 4);
  CHECK(table1(120, 1).size() == full.size());
  CHECK(table1_rows().size() == 16);
  CHECK(to_string(TableStatus::kVerifiedConstant) == "verified-constant");
}
