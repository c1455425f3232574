#include "egeq/congruence.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <string>

namespace egeq {
namespace {

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& modulus) {
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

BigInt inverse_mod(const BigInt& value, const BigInt& modulus) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw std::invalid_argument(to_string(value) + " is not invertible mod " + to_string(modulus));
  }
  return out;
}

BigInt power_of_two(std::uint64_t e) {
  BigInt out = 1;
  out <<= e;
  return out;
}

std::uint64_t low_word(const BigInt& value) {
  return mpz_size(value.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(value.get_mpz_t(), 0);
}

// c with 2^{k-1} == c  <=>  congruence (u) holds at k.
BigInt congruence_target(unsigned u, const BigInt& modulus) {
  BigInt c = -(3 * BigInt(u) + 1);
  c *= inverse_mod(3, modulus);
  c %= modulus;
  if (c < 0) c += modulus;
  return c;
}

Factorization factor_big(const BigInt& value) {
  if (!value.fits_ulong_p()) throw UnsupportedModulus("trial division is limited to 64-bit values");
  return factor_trial_division(value.get_ui());
}

ProgressionRow row_from_dlog(unsigned u, const BigInt& e, const BigInt& r) {
  ProgressionRow row;
  row.u = u;
  row.k0 = e + 1;
  row.r = r;
  row.origin = RowOrigin::kComputed;
  return row;
}

}  // namespace

BigInt congruence_modulus(unsigned u) { return power_of_two(u + 3) - 3; }

bool congruence_holds(unsigned u, const BigInt& k) {
  if (k < 1) throw std::invalid_argument("congruence needs k >= 1");
  const BigInt modulus = congruence_modulus(u);
  BigInt value = pow_mod(2, k - 1, modulus);
  value = value * 3 + 3 * BigInt(u) + 1;
  return value % modulus == 0;
}

std::optional<BigInt> family_n(unsigned u, std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("family needs k >= 2");
  if (k > kFamilyExactLimit) throw std::length_error("family_n: k too large to materialize 2^{k-1}");
  const BigInt modulus = congruence_modulus(u);
  const BigInt half = power_of_two(k - 1);
  const BigInt numerator = 3 * half + 3 * BigInt(u) + 1;
  if (numerator % modulus != 0) return std::nullopt;
  BigInt n = half - BigInt(static_cast<unsigned long>(k)) + numerator / modulus;
  if (n < 1) return std::nullopt;
  return n;
}

std::optional<Solution> family_solution(unsigned u, std::uint64_t k) {
  if (k > kFamilySolutionLimit) throw std::length_error("family_solution: too many terms to materialize");
  auto n = family_n(u, k);
  if (!n) return std::nullopt;
  Solution s;
  s.n = *n;
  for (std::uint64_t i = 1; i + 2 <= k; ++i) s.terms.push_back(*n + static_cast<unsigned long>(i));
  s.terms.push_back(*n + static_cast<unsigned long>(k) + u);
  s.terms.push_back(*n + static_cast<unsigned long>(k) + u + 1);
  return s;
}

Factorization factor_trial_division(std::uint64_t value) {
  if (value == 0) throw std::invalid_argument("cannot factor 0");
  Factorization out;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (value % p == 0) {
      value /= p;
      ++e;
    }
    if (e) out.emplace_back(BigInt(static_cast<unsigned long>(p)), e);
  };
  strip(2);
  for (std::uint64_t p = 3; p <= value / p; p += 2) strip(p);
  if (value > 1) out.emplace_back(BigInt(static_cast<unsigned long>(value)), 1);
  return out;
}

std::uint64_t mult_order_iterative(std::uint64_t modulus) {
  if (modulus < 3 || modulus % 2 == 0) throw std::invalid_argument("order of 2 needs an odd modulus >= 3");
  std::uint64_t e = 1;
  unsigned __int128 x = 2 % modulus;
  while (x != 1) {
    x = (x * 2) % modulus;
    ++e;
  }
  return e;
}

BigInt mult_order(const BigInt& modulus, const Factorization& order_multiple) {
  if (modulus < 3 || mpz_even_p(modulus.get_mpz_t())) {
    throw std::invalid_argument("order of 2 needs an odd modulus >= 3");
  }
  BigInt order = 1;
  for (const auto& [p, e] : order_multiple) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    order *= pe;
  }
  if (pow_mod(2, order, modulus) != 1) {
    throw std::invalid_argument("supplied factorization is not a multiple of the order");
  }
  for (const auto& [p, e] : order_multiple) {
    for (unsigned i = 0; i < e; ++i) {
      const BigInt reduced = order / p;
      if (pow_mod(2, reduced, modulus) != 1) break;
      order = reduced;
    }
  }
  return order;
}

BigInt mult_order(const BigInt& modulus) {
  if (bit_length(modulus) > kMaxComputedModulusBits) {
    throw UnsupportedModulus("modulus " + to_string(modulus) + " exceeds " +
                             std::to_string(kMaxComputedModulusBits) + " bits");
  }
  // Carmichael lambda of the modulus is a multiple of the order.
  BigInt lambda = 1;
  for (const auto& [p, e] : factor_big(modulus)) {
    BigInt part;
    mpz_pow_ui(part.get_mpz_t(), p.get_mpz_t(), e - 1);
    part *= p - 1;
    mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), part.get_mpz_t());
  }
  return mult_order(modulus, factor_big(lambda));
}

std::optional<BigInt> bsgs_dlog(const BigInt& base, const BigInt& target, const BigInt& modulus,
                                const BigInt& order) {
  if (order < 1) throw std::invalid_argument("bsgs needs a positive order");
  if (bit_length(order) > kMaxBsgsOrderBits) {
    throw UnsupportedModulus("group order exceeds " + std::to_string(kMaxBsgsOrderBits) + " bits");
  }
  BigInt m_big;
  mpz_sqrt(m_big.get_mpz_t(), order.get_mpz_t());
  if (m_big * m_big < order) ++m_big;
  const std::uint64_t m = m_big.get_ui();

  BigInt t = target % modulus;
  if (t < 0) t += modulus;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> baby;
  baby.reserve(m);
  BigInt value = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace_back(low_word(value), j);
    value = value * base % modulus;
  }
  std::sort(baby.begin(), baby.end());
  const bool word_exact = bit_length(modulus) <= 64;

  const BigInt giant = inverse_mod(pow_mod(base, m_big, modulus), modulus);
  const BigInt steps = (order + m_big - 1) / m_big;
  BigInt gamma = t;
  for (BigInt i = 0; i < steps; ++i) {
    const std::uint64_t key = low_word(gamma);
    auto [lo, hi] = std::equal_range(baby.begin(), baby.end(), std::make_pair(key, std::uint64_t{0}),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = lo; it != hi; ++it) {
      const BigInt j = static_cast<unsigned long>(it->second);
      if (!word_exact && pow_mod(base, j, modulus) != gamma) continue;
      BigInt e = i * m_big + j;
      if (e < order) return e;
    }
    gamma = gamma * giant % modulus;
  }
  return std::nullopt;
}

std::optional<BigInt> bsgs_dlog(const BigInt& target, const BigInt& modulus, const BigInt& order) {
  return bsgs_dlog(2, target, modulus, order);
}

std::optional<BigInt> pohlig_hellman_dlog(const BigInt& target, const BigInt& modulus, const BigInt& order,
                                          const Factorization& order_factors) {
  BigInt check = 1;
  for (const auto& [p, e] : order_factors) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    check *= pe;
  }
  if (check != order) throw std::invalid_argument("factorization does not multiply to the order");

  BigInt residue = 0;
  BigInt combined = 1;
  for (const auto& [p, e] : order_factors) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    const BigInt cofactor = order / pe;
    const BigInt g = pow_mod(2, cofactor, modulus);
    const BigInt h = pow_mod(target, cofactor, modulus);
    BigInt p_top;
    mpz_pow_ui(p_top.get_mpz_t(), p.get_mpz_t(), e - 1);
    const BigInt gamma = pow_mod(g, p_top, modulus);  // order p
    const BigInt g_inv = inverse_mod(g, modulus);

    BigInt x = 0;
    BigInt p_j = 1;
    for (unsigned j = 0; j < e; ++j) {
      BigInt shifted = h * pow_mod(g_inv, x, modulus) % modulus;
      BigInt exp;
      mpz_pow_ui(exp.get_mpz_t(), p.get_mpz_t(), e - 1 - j);
      shifted = pow_mod(shifted, exp, modulus);
      const auto digit = bsgs_dlog(gamma, shifted, modulus, p);
      if (!digit) return std::nullopt;
      x += *digit * p_j;
      p_j *= p;
    }
    // residue := CRT(residue mod combined, x mod pe)
    const BigInt t = ((x - residue) % pe + pe) % pe * inverse_mod(combined % pe, pe) % pe;
    residue += combined * t;
    combined *= pe;
  }
  residue %= order;
  if (pow_mod(2, residue, modulus) != (target % modulus + modulus) % modulus) return std::nullopt;
  return residue;
}

const std::vector<ProgressionRow>& embedded_rows() {
  static const std::vector<ProgressionRow> rows = [] {
    auto row = [](unsigned u, const char* k0, const char* r) {
      return ProgressionRow{u, BigInt(k0), BigInt(r), RowOrigin::kVerifiedConstant};
    };
    return std::vector<ProgressionRow>{
        row(55, "5843993308712118", "26202761468337430"),
        row(99, "364550281031913286431277811782", "2535300206192230667655098198606"),
        row(113, "2452672773763126728478631379525174", "83076749736557242056487941267521532"),
        row(119, "3303995011423016739508338720636484139", "5316911983139663491615228241121378300"),
    };
  }();
  return rows;
}

bool verify_row(const ProgressionRow& row) {
  if (row.r < 1 || row.k0 < 1 || row.k0 > row.r) return false;
  const BigInt modulus = congruence_modulus(row.u);
  return congruence_holds(row.u, row.k0) && pow_mod(2, row.r, modulus) == 1;
}

std::optional<ProgressionRow> solve_congruence(unsigned u) {
  for (const auto& row : embedded_rows()) {
    if (row.u != u) continue;
    if (!verify_row(row)) throw std::logic_error("embedded row u = " + std::to_string(u) + " failed verification");
    return row;
  }
  const BigInt modulus = congruence_modulus(u);
  if (bit_length(modulus) > kMaxComputedModulusBits) {
    throw UnsupportedModulus("u = " + std::to_string(u) + " is outside the computed range and not embedded");
  }
  const BigInt r = mult_order(modulus);
  const auto e = bsgs_dlog(congruence_target(u, modulus), modulus, r);
  if (!e) return std::nullopt;
  return row_from_dlog(u, *e, r);
}

std::optional<ProgressionRow> solve_congruence(unsigned u, const Factorization& order_multiple) {
  const BigInt modulus = congruence_modulus(u);
  const BigInt r = mult_order(modulus, order_multiple);
  Factorization r_factors;
  for (const auto& [p, e] : order_multiple) {
    unsigned count = 0;
    BigInt rest = r;
    while (rest % p == 0) {
      rest /= p;
      ++count;
    }
    if (count) r_factors.emplace_back(p, count);
  }
  const auto e = pohlig_hellman_dlog(congruence_target(u, modulus), modulus, r, r_factors);
  if (!e) return std::nullopt;
  return row_from_dlog(u, *e, r);
}

std::string to_string(TableStatus status) {
  switch (status) {
    case TableStatus::kComputed:
      return "computed";
    case TableStatus::kVerifiedConstant:
      return "verified-constant";
    case TableStatus::kUnsupported:
      return "unsupported";
  }
  return "unknown";
}

std::vector<Table1Entry> table1(unsigned u_max, int jobs) {
  std::vector<std::optional<Table1Entry>> slots(u_max + 1);
  std::exception_ptr failure;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long u = static_cast<long>(u_max); u >= 0; --u) {
    try {
      Table1Entry entry;
      entry.u = static_cast<unsigned>(u);
      try {
        entry.row = solve_congruence(entry.u);
        if (entry.row) {
          entry.status = entry.row->origin == RowOrigin::kVerifiedConstant ? TableStatus::kVerifiedConstant
                                                                            : TableStatus::kComputed;
          slots[u] = std::move(entry);
        }
      } catch (const UnsupportedModulus&) {
        entry.status = TableStatus::kUnsupported;
        slots[u] = std::move(entry);
      }
    } catch (...) {
#pragma omp critical(egeq_table1_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Table1Entry> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  return out;
}

std::vector<ProgressionRow> table1_rows() {
  std::vector<ProgressionRow> rows;
  for (auto& entry : table1(120)) {
    if (entry.row) rows.push_back(std::move(*entry.row));
  }
  return rows;
}

}  // namespace egeq
