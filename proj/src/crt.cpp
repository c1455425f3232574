#include "egeq/crt.hpp"

#include <omp.h>

#include <exception>
#include <set>
#include <string>

namespace egeq {

CongruenceClass CongruenceClass::make(const BigInt& residue, const BigInt& modulus) {
  if (modulus < 1) throw std::invalid_argument("congruence class needs a positive modulus");
  CongruenceClass out;
  out.modulus = modulus;
  mpz_fdiv_r(out.residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

bool CongruenceClass::contains(const BigInt& value) const {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r == residue;
}

BigInt CongruenceClass::least_at_least(const BigInt& floor) const {
  BigInt gap;
  mpz_fdiv_r(gap.get_mpz_t(), BigInt(residue - floor).get_mpz_t(), modulus.get_mpz_t());
  return floor + gap;
}

std::optional<CongruenceClass> crt_pair(const CongruenceClass& a, const CongruenceClass& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.modulus.get_mpz_t(), b.modulus.get_mpz_t());
  const BigInt diff = b.residue - a.residue;
  if (diff % g != 0) return std::nullopt;

  const BigInt m1 = a.modulus / g;
  const BigInt m2 = b.modulus / g;
  BigInt t = 0;
  if (m2 != 1) {
    BigInt inv;
    BigInt m1_red;
    mpz_fdiv_r(m1_red.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (mpz_invert(inv.get_mpz_t(), m1_red.get_mpz_t(), m2.get_mpz_t()) == 0) {
      throw std::logic_error("crt: reduced moduli are not coprime");
    }
    t = diff / g * inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m2.get_mpz_t());
  }
  return CongruenceClass::make(a.residue + a.modulus * t, a.modulus * m2);
}

CongruenceClass row_class(const ProgressionRow& row) { return CongruenceClass::make(row.k0, row.r); }

std::optional<CongruenceClass> combine_rows(std::span<const ProgressionRow> rows) {
  CongruenceClass acc = CongruenceClass::make(0, 1);
  for (const auto& row : rows) {
    auto next = crt_pair(acc, row_class(row));
    if (!next) return std::nullopt;
    acc = std::move(*next);
  }
  return acc;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    out = out * (n - m + i) / i;
    if (out > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(out);
}

std::vector<unsigned> unrank_combination(std::uint64_t rank, unsigned n, unsigned m) {
  if (rank >= binomial(n, m)) throw std::out_of_range("combination rank out of range");
  std::vector<unsigned> out;
  unsigned next = 0;
  for (unsigned slot = 0; slot < m; ++slot) {
    for (;; ++next) {
      const std::uint64_t block = binomial(n - next - 1, m - slot - 1);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(next++);
  }
  return out;
}

namespace {

std::optional<SubsetMatch> try_subset(std::span<const ProgressionRow> rows, const std::vector<unsigned>& idx) {
  std::vector<ProgressionRow> chosen;
  chosen.reserve(idx.size());
  for (auto i : idx) chosen.push_back(rows[i]);
  auto cls = combine_rows(chosen);
  if (!cls) return std::nullopt;
  SubsetMatch match;
  for (const auto& row : chosen) match.u_values.push_back(row.u);
  match.cls = std::move(*cls);
  return match;
}

bool next_combination(std::vector<unsigned>& idx, unsigned n) {
  const unsigned m = static_cast<unsigned>(idx.size());
  for (unsigned i = m; i-- > 0;) {
    if (idx[i] < n - m + i) {
      ++idx[i];
      for (unsigned j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<SubsetMatch> scan_subsets_serial(std::span<const ProgressionRow> rows, unsigned m) {
  std::vector<SubsetMatch> out;
  const auto n = static_cast<unsigned>(rows.size());
  if (m == 0 || m > n) return out;
  std::vector<unsigned> idx(m);
  for (unsigned i = 0; i < m; ++i) idx[i] = i;
  do {
    if (auto match = try_subset(rows, idx)) out.push_back(std::move(*match));
  } while (next_combination(idx, n));
  return out;
}

std::vector<SubsetMatch> scan_subsets(std::span<const ProgressionRow> rows, unsigned m, int jobs) {
  const auto n = static_cast<unsigned>(rows.size());
  if (m == 0 || m > n) return {};
  const std::uint64_t total = binomial(n, m);
  std::vector<std::optional<SubsetMatch>> slots(total);
  std::exception_ptr failure;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    try {
      slots[rank] = try_subset(rows, unrank_combination(rank, n, m));
    } catch (...) {
#pragma omp critical(egeq_subset_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SubsetMatch> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  return out;
}

std::uint64_t certify_multiplicity(const CongruenceClass& cls, std::span<const ProgressionRow> rows) {
  std::set<unsigned> seen;
  for (const auto& row : rows) {
    if (!seen.insert(row.u).second) {
      throw CertificationError(row.u, "row u = " + std::to_string(row.u) + " appears twice");
    }
  }
  const BigInt k = cls.least_at_least(2);
  for (const auto& row : rows) {
    if (!congruence_holds(row.u, k)) {
      throw CertificationError(row.u, "congruence for u = " + std::to_string(row.u) + " fails at k = " +
                                          to_string(k));
    }
  }
  return 1 + rows.size();
}

}  // namespace egeq
