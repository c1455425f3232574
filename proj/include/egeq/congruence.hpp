#ifndef EGEQ_CONGRUENCE_HPP
#define EGEQ_CONGRUENCE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "egeq/exact_arith.hpp"

namespace egeq {

// Solution families with a_i = n+i (i <= k-2), a_{k-1} = n+k+u,
// a_k = n+k+u+1. Such an n is an integer exactly when
//   3 * 2^{k-1} + 3u + 1 == 0  (mod 2^{u+3} - 3),
// a discrete logarithm problem in base 2.

class UnsupportedModulus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prime factorization as (prime, exponent) pairs.
using Factorization = std::vector<std::pair<BigInt, unsigned>>;

enum class RowOrigin { kComputed, kVerifiedConstant };

/// Congruence (u) holds exactly for k == k0 (mod r), r = ord_M(2).
struct ProgressionRow {
  unsigned u = 0;
  BigInt k0;
  BigInt r;
  RowOrigin origin = RowOrigin::kComputed;

  friend bool operator==(const ProgressionRow& a, const ProgressionRow& b) {
    return a.u == b.u && a.k0 == b.k0 && a.r == b.r;
  }
};

/// Moduli up to this many bits are solved from scratch.
inline constexpr unsigned kMaxComputedModulusBits = 34;
/// Baby-step/giant-step refuses group orders above this many bits.
inline constexpr unsigned kMaxBsgsOrderBits = 56;
/// family_n materializes 2^{k-1}; larger k are checked modularly only.
inline constexpr std::uint64_t kFamilyExactLimit = std::uint64_t{1} << 27;
/// family_solution materializes k terms.
inline constexpr std::uint64_t kFamilySolutionLimit = std::uint64_t{1} << 16;

BigInt congruence_modulus(unsigned u);  // 2^{u+3} - 3

/// 3 * 2^{k-1} + 3u + 1 == 0 mod 2^{u+3} - 3, by modular exponentiation.
bool congruence_holds(unsigned u, const BigInt& k);

/// n = 2^{k-1} - k + (3 * 2^{k-1} + 3u + 1) / (2^{u+3} - 3) when the division
/// is exact and n >= 1.
std::optional<BigInt> family_n(unsigned u, std::uint64_t k);

std::optional<Solution> family_solution(unsigned u, std::uint64_t k);

/// ord_modulus(2) by counting doublings. Oracle for small moduli.
std::uint64_t mult_order_iterative(std::uint64_t modulus);

/// ord_modulus(2) for odd moduli below 2^34, factoring by trial division.
BigInt mult_order(const BigInt& modulus);

/// ord_modulus(2) given the factorization of any multiple of it.
BigInt mult_order(const BigInt& modulus, const Factorization& order_multiple);

/// Least e in [0, order) with base^e == target (mod modulus).
std::optional<BigInt> bsgs_dlog(const BigInt& base, const BigInt& target, const BigInt& modulus,
                                const BigInt& order);

/// base = 2.
std::optional<BigInt> bsgs_dlog(const BigInt& target, const BigInt& modulus, const BigInt& order);

/// Least e in [0, order) with 2^e == target, splitting the order by its
/// factorization (each prime solved by baby-step/giant-step).
std::optional<BigInt> pohlig_hellman_dlog(const BigInt& target, const BigInt& modulus, const BigInt& order,
                                          const Factorization& order_factors);

/// Embedded rows for moduli beyond the computed range (u = 55, 99, 113, 119).
const std::vector<ProgressionRow>& embedded_rows();

/// Congruence holds at k0, 2^r == 1, and 1 <= k0 <= r.
bool verify_row(const ProgressionRow& row);

/// Throws UnsupportedModulus when u is neither computable nor embedded.
std::optional<ProgressionRow> solve_congruence(unsigned u);

/// Any u, given the factorization of a multiple of ord_M(2).
std::optional<ProgressionRow> solve_congruence(unsigned u, const Factorization& order_multiple);

enum class TableStatus { kComputed, kVerifiedConstant, kUnsupported };

struct Table1Entry {
  unsigned u = 0;
  TableStatus status = TableStatus::kComputed;
  std::optional<ProgressionRow> row;  // empty for unsupported
};

std::string to_string(TableStatus status);

/// Solvable u <= u_max in order, plus one kUnsupported entry per u that is
/// out of range and not embedded.
std::vector<Table1Entry> table1(unsigned u_max, int jobs = 0);

/// All known rows with u <= 120: computed ones plus the embedded constants.
std::vector<ProgressionRow> table1_rows();

Factorization factor_trial_division(std::uint64_t value);

}  // namespace egeq

#endif  // EGEQ_CONGRUENCE_HPP
