#ifndef EGEQ_EXACT_ARITH_HPP
#define EGEQ_EXACT_ARITH_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace egeq {

using BigInt = mpz_class;

// Canonical (gcd-reduced, positive denominator) rational. Built with
// make_rational() when the inputs come from outside.
using Rational = mpq_class;

Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "p/q" or an integer literal.
Rational parse_rational(const std::string& text);

std::string to_string(const BigInt& value);
std::string to_string(const Rational& value);

/// Number of significant bits; 0 for zero.
std::uint64_t bit_length(const BigInt& value);

class DyadicUnderflow : public std::domain_error {
 public:
  DyadicUnderflow() : std::domain_error("dyadic subtraction would go negative") {}
};

/// Non-negative rational num / 2^exp, kept normalized: num odd, or exp = 0.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(BigInt num, std::uint64_t exp);

  /// value = scaled / 2^exp, normalized.
  static DyadicRational from_scaled(const BigInt& scaled, std::uint64_t exp) {
    return DyadicRational(scaled, exp);
  }

  const BigInt& num() const { return num_; }
  std::uint64_t exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  /// num * 2^(target_exp - exp); target_exp must be >= exp.
  BigInt scaled_to(std::uint64_t target_exp) const;

  Rational to_rational() const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  BigInt num_ = 0;
  std::uint64_t exp_ = 0;
};

/// a / 2^a, normalized. Throws std::invalid_argument for a = 0.
DyadicRational term_value(std::uint64_t a);

DyadicRational dy_add(const DyadicRational& x, const DyadicRational& y);

/// Throws DyadicUnderflow when y > x.
DyadicRational dy_sub(const DyadicRational& x, const DyadicRational& y);

inline DyadicRational operator+(const DyadicRational& x, const DyadicRational& y) { return dy_add(x, y); }
inline DyadicRational operator-(const DyadicRational& x, const DyadicRational& y) { return dy_sub(x, y); }

/// Solves a / 2^a = r. Because 1/2 = 1/2^1 = 2/2^2 the answer for 1/2 is 1;
/// invert_term_all() lists both.
std::optional<std::uint64_t> invert_term(const DyadicRational& r);
std::vector<std::uint64_t> invert_term_all(const DyadicRational& r);

/// A claimed solution (n, a_1 < ... < a_k) of n/2^n = sum a_i/2^{a_i}.
struct Solution {
  BigInt n;
  std::vector<BigInt> terms;

  std::size_t k() const { return terms.size(); }

  /// Throws std::invalid_argument unless k >= 2, terms strictly increase and
  /// a_1 >= n + 1.
  void validate() const;

  std::string to_string() const;  // "n;a1,a2,...,ak"

  friend bool operator==(const Solution& a, const Solution& b) {
    return a.n == b.n && a.terms == b.terms;
  }
  friend bool operator<(const Solution& a, const Solution& b);
};

Solution make_solution(std::uint64_t n, std::span<const std::uint64_t> terms);
Solution make_solution(std::uint64_t n, std::initializer_list<std::uint64_t> terms);

/// Exact check of n * 2^{a_k - n} == sum a_i * 2^{a_k - a_i}. Returns false
/// for anything violating the Solution invariants.
bool verify_solution(const Solution& s);

/// Little-endian word array accumulating sum value_i * 2^{shift_i}. Each add
/// touches O(1) words amortized, so sums of ~10^6 terms at bit offsets of
/// ~10^6 stay linear.
class FixedPointSum {
 public:
  void add(std::uint64_t value, std::uint64_t shift);
  void add(const BigInt& value, std::uint64_t shift);

  BigInt to_bigint() const;
  bool is_zero() const;

  friend bool operator==(const FixedPointSum& a, const FixedPointSum& b);

 private:
  void add_word(std::uint64_t word, std::size_t index);

  std::vector<std::uint64_t> words_;
};

/// sum over terms of a/2^a == target, exactly.
bool representation_equals(std::span<const std::uint64_t> terms, const DyadicRational& target);
bool representation_equals(std::span<const std::uint64_t> terms, const Rational& target);

}  // namespace egeq

#endif  // EGEQ_EXACT_ARITH_HPP
