#ifndef EGEQ_TESTS_KNOWN_SOLUTIONS_HPP
#define EGEQ_TESTS_KNOWN_SOLUTIONS_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "egeq/exact_arith.hpp"

namespace egeq::testing {

using Listing = std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>;

// Reference complete lists for 2 <= k <= 8, sorted by (n, terms).
inline const std::map<std::uint64_t, Listing>& reference_lists() {
  static const std::map<std::uint64_t, Listing> lists{
      {2, {{4, {5, 6}}}},
      {3, {{1, {3, 6, 8}}, {1, {4, 5, 6}}, {2, {3, 6, 8}}, {2, {4, 5, 6}}, {3, {4, 6, 8}}, {11, {12, 13, 14}}}},
      {4, {{9, {10, 11, 13, 14}}, {26, {27, 28, 29, 30}}}},
      {5, {{5, {6, 7, 11, 13, 14}}, {6, {7, 8, 11, 13, 14}}, {15, {16, 17, 18, 21, 22}}, {57, {58, 59, 60, 61, 62}}}},
      {6,
       {{4, {5, 7, 8, 11, 13, 14}},
        {12, {13, 14, 15, 20, 21, 24}},
        {13, {14, 15, 16, 20, 21, 24}},
        {21, {22, 23, 24, 26, 27, 32}},
        {120, {121, 122, 123, 124, 125, 126}}}},
      {7,
       {{1, {4, 5, 7, 8, 11, 13, 14}},
        {2, {4, 5, 7, 8, 11, 13, 14}},
        {7, {8, 9, 11, 15, 20, 21, 24}},
        {18, {19, 20, 21, 23, 26, 27, 32}},
        {247, {248, 249, 250, 251, 252, 253, 254}}}},
      {8,
       {{17, {18, 19, 20, 22, 26, 29, 30, 32}},
        {19, {20, 21, 22, 24, 26, 29, 30, 32}},
        {197, {198, 199, 200, 201, 202, 203, 205, 206}},
        {502, {503, 504, 505, 506, 507, 508, 509, 510}}}},
  };
  return lists;
}

inline std::vector<Solution> reference_solutions(std::uint64_t k) {
  std::vector<Solution> out;
  for (const auto& [n, terms] : reference_lists().at(k)) out.push_back(make_solution(n, terms));
  return out;
}

inline const std::vector<std::uint64_t>& reference_counts_line() {
  // N(2..7) as quoted in the text accompanying the lists.
  static const std::vector<std::uint64_t> counts{1, 6, 2, 4, 5, 3};
  return counts;
}

}  // namespace egeq::testing

#endif  // EGEQ_TESTS_KNOWN_SOLUTIONS_HPP
