#include "egeq/exact_arith.hpp"

#include <algorithm>
#include <sstream>

namespace egeq {

static_assert(GMP_NUMB_BITS == 64, "FixedPointSum assumes 64-bit GMP limbs");

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational denominator is zero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return make_rational(BigInt(text), 1);
    return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed fraction: '" + text + "'");
  }
}

std::string to_string(const BigInt& value) { return value.get_str(); }
std::string to_string(const Rational& value) { return value.get_str(); }

std::uint64_t bit_length(const BigInt& value) {
  return value == 0 ? 0 : mpz_sizeinbase(value.get_mpz_t(), 2);
}

// Normal form: num odd, or exp = 0 (integers keep their even numerators).
DyadicRational::DyadicRational(BigInt num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) {
  if (num_ < 0) throw std::invalid_argument("dyadic rationals are non-negative here");
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const std::uint64_t twos = mpz_scan1(num_.get_mpz_t(), 0);
  const std::uint64_t shift = std::min(twos, exp_);
  if (shift > 0) {
    num_ >>= shift;
    exp_ -= shift;
  }
}

BigInt DyadicRational::scaled_to(std::uint64_t target_exp) const {
  if (target_exp < exp_) throw std::invalid_argument("scaled_to: target exponent too small");
  BigInt out = num_;
  out <<= (target_exp - exp_);
  return out;
}

Rational DyadicRational::to_rational() const {
  BigInt den = 1;
  den <<= exp_;
  return make_rational(num_, den);
}

double DyadicRational::to_double() const { return to_rational().get_d(); }

std::string DyadicRational::to_string() const {
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const std::uint64_t common = std::max(a.exp_, b.exp_);
  const int c = cmp(a.scaled_to(common), b.scaled_to(common));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

DyadicRational term_value(std::uint64_t a) {
  if (a == 0) throw std::invalid_argument("term_value: a must be positive");
  return DyadicRational(BigInt(static_cast<unsigned long>(a)), a);
}

DyadicRational dy_add(const DyadicRational& x, const DyadicRational& y) {
  const std::uint64_t common = std::max(x.exp(), y.exp());
  return DyadicRational(x.scaled_to(common) + y.scaled_to(common), common);
}

DyadicRational dy_sub(const DyadicRational& x, const DyadicRational& y) {
  const std::uint64_t common = std::max(x.exp(), y.exp());
  BigInt diff = x.scaled_to(common) - y.scaled_to(common);
  if (diff < 0) throw DyadicUnderflow();
  return DyadicRational(std::move(diff), common);
}

// a/2^a with a = p * 2^v (p odd) normalizes to p / 2^{a - v}, so a solution
// needs p * 2^v - v = e. The left side never decreases in v.
std::vector<std::uint64_t> invert_term_all(const DyadicRational& r) {
  std::vector<std::uint64_t> out;
  if (r.is_zero() || !r.num().fits_ulong_p()) return out;
  const unsigned __int128 p = r.num().get_ui();
  const unsigned __int128 e = r.exp();
  if (e == 0) return out;  // integers >= 1 are never a/2^a
  for (unsigned v = 0; v < 64; ++v) {
    const unsigned __int128 a = p << v;
    if (a - v > e) break;
    if (a - v == e) out.push_back(static_cast<std::uint64_t>(a));
  }
  return out;
}

std::optional<std::uint64_t> invert_term(const DyadicRational& r) {
  const auto all = invert_term_all(r);
  if (all.empty()) return std::nullopt;
  return all.front();
}

void Solution::validate() const {
  if (terms.size() < 2) throw std::invalid_argument("solution needs k >= 2 terms");
  if (n < 1) throw std::invalid_argument("solution needs n >= 1");
  if (terms.front() < n + 1) throw std::invalid_argument("solution needs a_1 >= n + 1");
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (!(terms[i - 1] < terms[i])) throw std::invalid_argument("solution terms must strictly increase");
  }
}

std::string Solution::to_string() const {
  std::ostringstream out;
  out << n.get_str() << ';';
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out << ',';
    out << terms[i].get_str();
  }
  return out.str();
}

bool operator<(const Solution& a, const Solution& b) {
  if (a.n != b.n) return a.n < b.n;
  return std::lexicographical_compare(a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end());
}

Solution make_solution(std::uint64_t n, std::span<const std::uint64_t> terms) {
  Solution s;
  s.n = static_cast<unsigned long>(n);
  s.terms.reserve(terms.size());
  for (auto a : terms) s.terms.emplace_back(static_cast<unsigned long>(a));
  return s;
}

Solution make_solution(std::uint64_t n, std::initializer_list<std::uint64_t> terms) {
  return make_solution(n, std::span<const std::uint64_t>(terms.begin(), terms.size()));
}

bool verify_solution(const Solution& s) {
  try {
    s.validate();
  } catch (const std::invalid_argument&) {
    return false;
  }
  const BigInt& top = s.terms.back();
  const BigInt lhs_shift = top - s.n;
  if (!lhs_shift.fits_ulong_p()) return false;

  FixedPointSum lhs;
  FixedPointSum rhs;
  lhs.add(s.n, lhs_shift.get_ui());
  for (const auto& a : s.terms) {
    const BigInt shift = top - a;
    rhs.add(a, shift.get_ui());
  }
  return lhs == rhs;
}

void FixedPointSum::add_word(std::uint64_t word, std::size_t index) {
  while (word != 0) {
    if (index >= words_.size()) words_.resize(index + 1, 0);
    const std::uint64_t before = words_[index];
    words_[index] = before + word;
    word = words_[index] < before ? 1 : 0;
    ++index;
  }
}

void FixedPointSum::add(std::uint64_t value, std::uint64_t shift) {
  const std::size_t index = shift / 64;
  const unsigned bit = shift % 64;
  add_word(value << bit, index);
  if (bit != 0) add_word(value >> (64 - bit), index + 1);
}

void FixedPointSum::add(const BigInt& value, std::uint64_t shift) {
  if (value < 0) throw std::invalid_argument("FixedPointSum only accumulates non-negative values");
  const std::size_t limbs = mpz_size(value.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    add(static_cast<std::uint64_t>(mpz_getlimbn(value.get_mpz_t(), i)), shift + 64 * i);
  }
}

BigInt FixedPointSum::to_bigint() const {
  BigInt out;
  if (!words_.empty()) {
    mpz_import(out.get_mpz_t(), words_.size(), -1, sizeof(std::uint64_t), 0, 0, words_.data());
  }
  return out;
}

bool FixedPointSum::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool operator==(const FixedPointSum& a, const FixedPointSum& b) {
  const std::size_t common = std::min(a.words_.size(), b.words_.size());
  if (!std::equal(a.words_.begin(), a.words_.begin() + common, b.words_.begin())) return false;
  const auto& longer = a.words_.size() > b.words_.size() ? a.words_ : b.words_;
  return std::all_of(longer.begin() + common, longer.end(), [](std::uint64_t w) { return w == 0; });
}

bool representation_equals(std::span<const std::uint64_t> terms, const DyadicRational& target) {
  if (terms.empty()) return target.is_zero();
  if (std::find(terms.begin(), terms.end(), 0) != terms.end()) return false;
  const std::uint64_t top = std::max(*std::max_element(terms.begin(), terms.end()), target.exp());
  FixedPointSum lhs;
  FixedPointSum rhs;
  for (auto a : terms) lhs.add(a, top - a);
  rhs.add(target.num(), top - target.exp());
  return lhs == rhs;
}

bool representation_equals(std::span<const std::uint64_t> terms, const Rational& target) {
  if (target < 0) return false;
  const BigInt& den = target.get_den();
  const std::uint64_t twos = mpz_scan1(den.get_mpz_t(), 0);
  const BigInt odd = den >> twos;
  if (odd == 1) return representation_equals(terms, DyadicRational(target.get_num(), twos));
  if (terms.empty()) return target == 0;
  if (std::find(terms.begin(), terms.end(), 0) != terms.end()) return false;

  // sum = A / 2^top; compare A * odd * 2^twos with num * 2^top.
  const std::uint64_t top = *std::max_element(terms.begin(), terms.end());
  FixedPointSum lhs;
  for (auto a : terms) lhs.add(a, top - a);
  BigInt left = lhs.to_bigint() * odd;
  left <<= twos;
  BigInt right = target.get_num();
  right <<= top;
  return left == right;
}

}  // namespace egeq
