#ifndef EGEQ_BOUNDS_HPP
#define EGEQ_BOUNDS_HPP

#include <cstdint>
#include <vector>

#include "egeq/exact_arith.hpp"

namespace egeq {

// Closed-form constraints every solution with k terms satisfies. Ceilings
// involving log2(k) are evaluated by comparing powers of two against k^{2k}
// with big integers, never in floating point.

/// Largest n admitting a solution: 2^{k+1} - k - 2. Throws for k < 2.
BigInt max_n(std::uint64_t k);

/// max_n as a machine word; throws std::overflow_error for k > 61.
std::uint64_t max_n_u64(std::uint64_t k);

/// (n, (n+1, ..., n+k)) with n = max_n(k).
Solution trivial_solution(std::uint64_t k);

/// Largest j in [1, k-1] with n >= 2^{j+1} - j (terms a_i = n+i, i <= j are
/// then forced), or 0 when none qualifies.
std::uint64_t forced_prefix_len(std::uint64_t n, std::uint64_t k);

/// Least integer B >= 2n + 2k log2(k).
std::uint64_t ak_bound_thm(std::uint64_t n, std::uint64_t k);

/// Least integer B >= 2^{k+2} + 2k(log2(k) - 1) - 4. k <= 60.
std::uint64_t ak_bound_cor(std::uint64_t k);

/// Largest a with a^{k-1} * 2^{a1} >= 2^a, i.e. the a_k ceiling implied by
/// a_k^{k-1} / 2^{a_k} >= 2^{-a_1} once a_1 is known.
std::uint64_t corollary_ceiling(std::uint64_t a1, std::uint64_t k);

/// 2^{a_k - a_{k-1}} | a_k and, for 1 <= i <= k-2,
/// 2^{a_k - a_i} <= (a_{i+2} ... a_k) * a_k.
bool product_bound_holds(const Solution& s);

/// a_k^{k-1} * 2^{a_1} >= 2^{a_k}.
bool corollary_bound_holds(const Solution& s);

struct SearchBox {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t a1_min = 0;
  std::uint64_t a1_max = 0;
  std::vector<std::uint64_t> forced_prefix;
  std::uint64_t ak_max = 0;
};

SearchBox make_search_box(std::uint64_t n, std::uint64_t k);

}  // namespace egeq

#endif  // EGEQ_BOUNDS_HPP
