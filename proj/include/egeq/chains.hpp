#ifndef EGEQ_CHAINS_HPP
#define EGEQ_CHAINS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "egeq/exact_arith.hpp"
#include "egeq/greedy.hpp"

namespace egeq {

/// sum_{i>=1} (p i + q)/2^{p i + q} = ((q+p) 2^p - q) / (2^q (2^p - 1)^2).
Rational tail_sum(std::uint64_t p, std::uint64_t q);

/// A finite prefix followed by the progression p i + q, i >= 1.
struct ProgressionRepresentation {
  std::vector<std::uint64_t> prefix;
  std::uint64_t p = 1;
  std::uint64_t q = 1;

  Rational value() const;  // prefix sum + tail_sum(p, q)
  std::vector<std::uint64_t> terms(std::uint64_t progression_terms) const;
  /// Prefix plus the first `progression_terms` terms of the progression.
  DyadicRational truncated(std::uint64_t progression_terms) const;
};

inline constexpr std::uint64_t kMinProgressionStart = 17;

/// Three representations of 1/2 + tail_sum(p, q) with prefixes {3,6,8},
/// {4,5,6} and {4,5,7,8,11,13,14}. Requires p + q >= 17.
std::array<ProgressionRepresentation, 3> three_representations(std::uint64_t p, std::uint64_t q);

struct ChainStep {
  std::uint64_t index = 0;      // i >= 1
  std::uint64_t source = 0;     // expanded term: a_start or the previous last term
  std::uint64_t k = 0;          // k_i
  std::uint64_t first_term = 0;
  std::uint64_t last_term = 0;  // a_{i,k_i}
  std::uint64_t digest = 0;     // FNV-1a of the term list
  bool verified = false;        // exact sum check against source/2^source
  std::optional<std::vector<std::uint64_t>> terms;  // kept for the first steps only

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct ChainOptions {
  std::uint64_t max_k = kDefaultMaxK;
  std::uint64_t keep_terms_depth = 3;
  /// Receives every full expansion (e.g. to stream it to disk).
  std::function<void(const ChainStep&, std::span<const std::uint64_t>)> on_terms;
};

struct Chain {
  std::uint64_t a_start = 0;
  std::vector<ChainStep> steps;
  bool exhausted = false;  // stopped early on the max_k budget
};

/// Step 1 greedily expands a_start/2^{a_start}, step i+1 expands
/// last_term/2^{last_term}. Stops after `depth` steps or on budget exhaustion.
Chain expand_chain(std::uint64_t a_start, std::uint64_t depth, const ChainOptions& options = {});

class ChainCertificationError : public std::runtime_error {
 public:
  ChainCertificationError(std::uint64_t step, const std::string& what) : std::runtime_error(what), step_(step) {}
  std::uint64_t step() const { return step_; }

 private:
  std::uint64_t step_;
};

/// Number of representations of a_start/2^{a_start} the chain certifies:
/// one per step plus the term itself.
std::uint64_t representation_count_certificate(const Chain& chain);

std::uint64_t term_digest(std::span<const std::uint64_t> terms);

}  // namespace egeq

#endif  // EGEQ_CHAINS_HPP
