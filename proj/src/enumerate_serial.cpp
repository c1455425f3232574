#include <algorithm>

#include "egeq/bounds.hpp"
#include "egeq/enumerate.hpp"

namespace egeq {

EnumerationResult enumerate_solutions_serial(std::uint64_t k, CeilingRule rule) {
  EnumerationResult result;
  const std::uint64_t n_max = max_n_u64(k);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    auto part = explore_node(SearchNode{n, {}}, k, rule, result.counters);
    result.solutions.insert(result.solutions.end(), part.begin(), part.end());
  }
  std::sort(result.solutions.begin(), result.solutions.end());
  return result;
}

std::uint64_t count_solutions(std::uint64_t k) { return enumerate_solutions(k).solutions.size(); }

}  // namespace egeq
