#ifndef EGEQ_GREEDY_HPP
#define EGEQ_GREEDY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "egeq/exact_arith.hpp"

namespace egeq {

// Greedy expansion x = sum a/2^a realized by the integerized sequence
//   x_{k0} = x * 2^{k0 - 1},
//   x_{i+1} = 2 x_i - i  (term i taken)   if that is >= 0,
//           = 2 x_i      (term i skipped) otherwise,
// which terminates exactly when some x_i reaches 0. Every state satisfies
// x_i < i + 1.

inline constexpr std::uint64_t kDefaultMaxK = std::uint64_t{1} << 20;

class FeasibilityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct GreedyState {
  std::uint64_t index = 0;
  Rational x;
  std::vector<std::uint64_t> emitted;
};

/// Least k >= 1 with k/2^k < x. Throws std::invalid_argument unless 0 < x < 2.
std::uint64_t k_zero(const Rational& x);

GreedyState initial_state(const Rational& x);

/// One step of the recurrence. Requires x > 0.
GreedyState advance(GreedyState state);

/// Terms of the greedy expansion, or nullopt when more than max_k terms
/// would be needed. A returned list is re-verified exactly against x.
std::optional<std::vector<std::uint64_t>> greedy_representation(const Rational& x,
                                                                std::uint64_t max_k = kDefaultMaxK);

struct GreedyRun {
  bool terminated = false;
  std::uint64_t k = 0;           // terms emitted (so far, when not terminated)
  std::uint64_t first_term = 0;  // 0 when nothing was emitted
  std::uint64_t last_term = 0;
  std::uint64_t steps = 0;
};

/// Integer fast path starting from x_index = x. Calls on_term for each
/// emitted index. Throws FeasibilityViolation if x_i >= i + 1 ever holds.
GreedyRun run_integer_greedy(std::uint64_t index, std::uint64_t x, std::uint64_t max_k,
                             const std::function<void(std::uint64_t)>& on_term = {});

struct GreedyForN {
  std::uint64_t k = 0;
  Solution rep;
};

/// Greedy representation of n/2^n (n >= 2), which starts at x_{n+1} = n.
std::optional<GreedyForN> greedy_for_n(std::uint64_t n, std::uint64_t max_k = kDefaultMaxK);

/// Terms only, without building a Solution.
std::optional<std::vector<std::uint64_t>> greedy_terms_for_n(std::uint64_t n, std::uint64_t max_k = kDefaultMaxK);

struct SweepRow {
  std::uint64_t n = 0;
  bool terminated = false;
  std::uint64_t k = 0;
  std::uint64_t a_1 = 0;
  std::uint64_t a_k = 0;

  /// k + n <= a_k <= 2(k + n); the conjectured window for a_k.
  bool in_window() const { return terminated && k + n <= a_k && a_k <= 2 * (k + n); }
  double ak_ratio() const { return static_cast<double>(a_k) / (2.0 * static_cast<double>(k + n)); }
  double k_over_n() const { return static_cast<double>(k) / static_cast<double>(n); }

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// One greedy run per n in [n_min, n_max], each output verified exactly.
std::vector<SweepRow> sweep_serial(std::uint64_t n_min, std::uint64_t n_max, std::uint64_t max_k = kDefaultMaxK);
std::vector<SweepRow> sweep(std::uint64_t n_min, std::uint64_t n_max, std::uint64_t max_k = kDefaultMaxK,
                            int jobs = 0);

SweepRow sweep_row(std::uint64_t n, std::uint64_t max_k);

}  // namespace egeq

#endif  // EGEQ_GREEDY_HPP
