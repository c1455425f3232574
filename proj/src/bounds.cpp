#include "egeq/bounds.hpp"

#include <stdexcept>

namespace egeq {
namespace {

void require_k(std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

BigInt pow_ui(std::uint64_t base, std::uint64_t exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

// Least t >= 0 with 2^t >= k^{2k}.
std::uint64_t log_term_ceiling(std::uint64_t k) {
  const BigInt x = pow_ui(k, 2 * k);
  return bit_length(x - 1);
}

// value >= 2^shift, with shift given as a big integer.
bool at_least_power_of_two(const BigInt& value, const BigInt& shift) {
  if (shift < 0) return value >= 1;
  // value >= 2^m  <=>  bit_length(value) >= m + 1
  return BigInt(static_cast<unsigned long>(bit_length(value))) >= shift + 1;
}

}  // namespace

BigInt max_n(std::uint64_t k) {
  require_k(k);
  BigInt out = 1;
  out <<= (k + 1);
  out -= static_cast<unsigned long>(k + 2);
  return out;
}

std::uint64_t max_n_u64(std::uint64_t k) {
  require_k(k);
  if (k > 61) throw std::overflow_error("max_n does not fit a machine word for k > 61");
  return (std::uint64_t{1} << (k + 1)) - k - 2;
}

Solution trivial_solution(std::uint64_t k) {
  Solution s;
  s.n = max_n(k);
  s.terms.reserve(k);
  for (std::uint64_t i = 1; i <= k; ++i) s.terms.push_back(s.n + static_cast<unsigned long>(i));
  return s;
}

std::uint64_t forced_prefix_len(std::uint64_t n, std::uint64_t k) {
  require_k(k);
  std::uint64_t best = 0;
  for (std::uint64_t j = 1; j < k && j + 1 < 64; ++j) {
    const std::uint64_t threshold = (std::uint64_t{1} << (j + 1)) - j;
    if (n < threshold) break;
    best = j;
  }
  return best;
}

std::uint64_t ak_bound_thm(std::uint64_t n, std::uint64_t k) {
  require_k(k);
  if (n < 1) throw std::invalid_argument("n must be positive");
  return 2 * n + log_term_ceiling(k);
}

std::uint64_t ak_bound_cor(std::uint64_t k) {
  require_k(k);
  if (k > 60) throw std::overflow_error("ak_bound_cor only supports k <= 60");
  return 2 * max_n_u64(k) + log_term_ceiling(k);
}

std::uint64_t corollary_ceiling(std::uint64_t a1, std::uint64_t k) {
  require_k(k);
  // (k-1) log2(a) - a + a1 is concave in a and non-negative at a1, so the
  // admissible a form an interval starting at a1.
  auto holds = [&](std::uint64_t a) { return bit_length(pow_ui(a, k - 1)) > a - a1; };
  std::uint64_t a = a1;
  while (holds(a + 1)) ++a;
  return a;
}

bool product_bound_holds(const Solution& s) {
  const auto& a = s.terms;
  const std::size_t k = a.size();
  if (k < 2) return false;
  const BigInt& top = a[k - 1];

  const BigInt gap = top - a[k - 2];
  if (top == 0 || BigInt(static_cast<unsigned long>(mpz_scan1(top.get_mpz_t(), 0))) < gap) return false;

  // 0-based idx from k-3 down to 0; product = a[idx+2] * ... * a[k-1] * a[k-1].
  BigInt product = top * top;
  for (std::size_t idx = k - 2; idx-- > 0;) {
    if (!at_least_power_of_two(product, top - a[idx])) return false;
    if (idx > 0) product *= a[idx + 1];
  }
  return true;
}

bool corollary_bound_holds(const Solution& s) {
  if (s.terms.size() < 2) return false;
  const BigInt& top = s.terms.back();
  if (!top.fits_ulong_p()) return false;
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), top.get_mpz_t(), s.terms.size() - 1);
  return at_least_power_of_two(power, top - s.terms.front());
}

SearchBox make_search_box(std::uint64_t n, std::uint64_t k) {
  SearchBox box;
  box.n = n;
  box.k = k;
  box.a1_min = n + 1;
  box.a1_max = n + 3;
  const std::uint64_t j = forced_prefix_len(n, k);
  for (std::uint64_t i = 1; i <= j; ++i) box.forced_prefix.push_back(n + i);
  box.ak_max = ak_bound_thm(n, k);
  return box;
}

}  // namespace egeq
