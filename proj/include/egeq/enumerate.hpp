#ifndef EGEQ_ENUMERATE_HPP
#define EGEQ_ENUMERATE_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egeq/exact_arith.hpp"

namespace egeq {

/// Where the search stops extending terms.
enum class CeilingRule {
  kTheorem,    // a_k <= 2n + 2k log2 k, depends on n only
  kCorollary,  // largest a with a^{k-1} 2^{a_1} >= 2^a, depends on a_1
};

std::string to_string(CeilingRule rule);
CeilingRule parse_ceiling_rule(std::string_view text);

/// Largest admissible term for the subtree rooted at (n, a_1).
std::uint64_t search_ceiling(CeilingRule rule, std::uint64_t n, std::uint64_t a1, std::uint64_t k);

/// Sum of m consecutive terms starting at b: sum_{i<m} (b+i)/2^{b+i}. For
/// b >= 2 this is the largest sum m strictly increasing terms >= b can reach.
DyadicRational tail_upper(std::uint64_t b, std::uint64_t m);

/// Smallest sum of m distinct terms all <= a_max, i.e. the m terms ending at
/// a_max. Requires a_max - m + 1 >= 3.
DyadicRational tail_lower(std::uint64_t m, std::uint64_t a_max);

/// A subtree of the search: all completions of `prefix` for this n.
struct SearchNode {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> prefix;

  std::string to_string() const;  // "n;a1,a2,...,al"
  static SearchNode parse(std::string_view line);

  friend auto operator<=>(const SearchNode&, const SearchNode&) = default;
};

struct PruneCounters {
  std::uint64_t nodes = 0;                  // interior nodes expanded
  std::uint64_t overshoot_skips = 0;        // a/2^a >= remainder
  std::uint64_t tail_upper_prunes = 0;      // remainder out of reach from a on
  std::uint64_t tail_lower_prunes = 0;      // remainder too small for terms <= ceiling
  std::uint64_t ceiling_exhausted = 0;      // candidate loop ran into the ceiling
  std::uint64_t close_attempts = 0;
  std::uint64_t close_no_inverse = 0;       // remainder is not a/2^a
  std::uint64_t close_out_of_range = 0;     // inverse <= previous term or above ceiling
  std::uint64_t divisibility_rejects = 0;   // 2^{a_k - a_{k-1}} does not divide a_k
  std::uint64_t product_bound_rejects = 0;  // post-filter
  std::uint64_t corollary_bound_rejects = 0;
  std::uint64_t solutions = 0;

  PruneCounters& operator+=(const PruneCounters& other);
  std::vector<std::pair<std::string, std::uint64_t>> items() const;
  friend bool operator==(const PruneCounters&, const PruneCounters&) = default;
};

struct EnumerationResult {
  std::vector<Solution> solutions;  // sorted by (n, terms)
  PruneCounters counters;
  std::size_t frontier_size = 0;
};

/// Children of the root of n: the forced prefix when n >= 2^{j+1} - j fixes one,
/// otherwise one node per admissible a_1 in [n+1, n+3].
std::vector<SearchNode> root_nodes(std::uint64_t n, std::uint64_t k);

/// The parallel work queue: for every n <= max_n(k), the forced prefix plus
/// the first unforced term.
std::vector<SearchNode> initial_frontier(std::uint64_t k, CeilingRule rule, PruneCounters& counters);

/// Depth-first search of one subtree. Thread-safe; touches only its arguments.
std::vector<Solution> explore_node(const SearchNode& node, std::uint64_t k, CeilingRule rule,
                                   PruneCounters& counters);

/// Serial reference: plain DFS from every root, no frontier split.
EnumerationResult enumerate_solutions_serial(std::uint64_t k, CeilingRule rule = CeilingRule::kTheorem);

struct EnumerateOptions {
  int jobs = 0;  // 0 = OpenMP default
  CeilingRule rule = CeilingRule::kTheorem;
  std::optional<std::filesystem::path> checkpoint;
  bool resume = false;
  std::chrono::milliseconds checkpoint_interval{30'000};
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// OpenMP enumeration over the frontier; output is independent of `jobs`.
EnumerationResult enumerate_solutions(std::uint64_t k, const EnumerateOptions& options = {});

std::uint64_t count_solutions(std::uint64_t k);

/// Line-oriented resumable state: '#' lines carry k, rule, counters and
/// solutions found so far; every other line is a pending frontier node
/// "n;a1,...,al".
struct Checkpoint {
  std::uint64_t k = 0;
  CeilingRule rule = CeilingRule::kTheorem;
  std::vector<SearchNode> frontier;
  std::vector<Solution> solutions;
  PruneCounters counters;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& state);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace egeq

#endif  // EGEQ_ENUMERATE_HPP
