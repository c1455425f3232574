#ifndef EGEQ_CRT_HPP
#define EGEQ_CRT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "egeq/congruence.hpp"
#include "egeq/exact_arith.hpp"

namespace egeq {

/// residue mod modulus, with 0 <= residue < modulus.
struct CongruenceClass {
  BigInt residue;
  BigInt modulus = 1;

  static CongruenceClass make(const BigInt& residue, const BigInt& modulus);

  bool contains(const BigInt& value) const;
  /// Least member >= floor.
  BigInt least_at_least(const BigInt& floor) const;

  friend bool operator==(const CongruenceClass& a, const CongruenceClass& b) {
    return a.residue == b.residue && a.modulus == b.modulus;
  }
};

/// Intersection of two classes with arbitrary (not necessarily coprime)
/// moduli, or nullopt when they are disjoint.
std::optional<CongruenceClass> crt_pair(const CongruenceClass& a, const CongruenceClass& b);

/// k0 mod r.
CongruenceClass row_class(const ProgressionRow& row);

/// Common k of all rows, or nullopt. An empty span gives 0 mod 1.
std::optional<CongruenceClass> combine_rows(std::span<const ProgressionRow> rows);

struct SubsetMatch {
  std::vector<unsigned> u_values;
  CongruenceClass cls;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t m);

/// Every m-subset of rows (in lexicographic index order) whose classes
/// intersect.
std::vector<SubsetMatch> scan_subsets_serial(std::span<const ProgressionRow> rows, unsigned m);
std::vector<SubsetMatch> scan_subsets(std::span<const ProgressionRow> rows, unsigned m, int jobs = 0);

/// Index combination number `rank` of m out of n, lexicographic.
std::vector<unsigned> unrank_combination(std::uint64_t rank, unsigned n, unsigned m);

class CertificationError : public std::runtime_error {
 public:
  CertificationError(unsigned u, const std::string& what) : std::runtime_error(what), u_(u) {}
  unsigned u() const { return u_; }

 private:
  unsigned u_;
};

/// Checks every row's congruence at the least k >= 2 of the class and
/// returns the certified number of solutions for that k: the trivial one plus
/// one per row. Throws CertificationError naming the first failing u.
std::uint64_t certify_multiplicity(const CongruenceClass& cls, std::span<const ProgressionRow> rows);

}  // namespace egeq

#endif  // EGEQ_CRT_HPP
