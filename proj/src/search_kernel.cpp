#include <charconv>
#include <stdexcept>

#include "egeq/bounds.hpp"
#include "egeq/enumerate.hpp"

namespace egeq {
namespace {

// sum_{i=1}^{m} (c+i)/2^{c+i} = ((2^m - 1) c + 2^{m+1} - m - 2) / 2^{c+m}
BigInt consecutive_sum_numerator(std::uint64_t c, std::uint64_t m) {
  BigInt pow_m = 1;
  pow_m <<= m;
  BigInt out = (pow_m - 1) * static_cast<unsigned long>(c);
  out += 2 * pow_m;
  out -= static_cast<unsigned long>(m + 2);
  return out;
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw std::invalid_argument("bad integer in search node: '" + std::string(text) + "'");
  }
  return value;
}

// DFS over one subtree. Remainders are integers: everything is scaled by
// 2^ceiling so a term a contributes a << (ceiling - a).
class SubtreeSearch {
 public:
  SubtreeSearch(std::uint64_t k, std::uint64_t n, std::uint64_t ceiling, PruneCounters& counters,
                std::vector<Solution>& out)
      : k_(k), n_(n), ceiling_(ceiling), counters_(counters), out_(out), tail_lower_(k + 1) {
    for (std::uint64_t m = 1; m <= k && m <= ceiling; ++m) {
      tail_lower_[m] = consecutive_sum_numerator(ceiling - m, m);
    }
  }

  BigInt scaled_term(std::uint64_t a) const {
    BigInt t = static_cast<unsigned long>(a);
    t <<= (ceiling_ - a);
    return t;
  }

  // Remainder of n/2^n after the prefix, or nullopt when the prefix is
  // already out of range.
  std::optional<BigInt> remainder_of(const std::vector<std::uint64_t>& prefix) const {
    if (ceiling_ < n_) return std::nullopt;
    BigInt r = scaled_term(n_);
    for (auto a : prefix) {
      if (a > ceiling_) return std::nullopt;
      r -= scaled_term(a);
    }
    return r;
  }

  // Calls visit(a, remainder_after_a) for every admissible next term.
  template <typename Visit>
  void for_each_child(std::uint64_t last, const BigInt& remainder, std::uint64_t slots, Visit&& visit) {
    ++counters_.nodes;
    if (ceiling_ < slots - 1) return;
    const std::uint64_t hi = ceiling_ - (slots - 1);
    std::uint64_t lo = last + 1;
    // a << (ceiling - a) >= 2^{ceiling - a} >= remainder once ceiling - a >= bits(remainder)
    const std::uint64_t bits = bit_length(remainder);
    if (ceiling_ + 1 > bits) lo = std::max(lo, ceiling_ + 1 - bits);

    bool broke = false;
    for (std::uint64_t a = lo; a <= hi; ++a) {
      BigInt rest = remainder - scaled_term(a);
      if (rest <= 0) {
        ++counters_.overshoot_skips;
        continue;
      }
      BigInt reach = consecutive_sum_numerator(a - 1, slots);
      reach <<= (ceiling_ - (a - 1) - slots);
      if (reach < remainder) {
        ++counters_.tail_upper_prunes;
        broke = true;
        break;
      }
      if (rest < tail_lower_[slots - 1]) {
        ++counters_.tail_lower_prunes;
        continue;
      }
      visit(a, rest);
    }
    if (!broke) ++counters_.ceiling_exhausted;
  }

  void descend(std::vector<std::uint64_t>& prefix, const BigInt& remainder) {
    const std::uint64_t slots = k_ - prefix.size();
    if (slots == 1) {
      close(prefix, remainder);
      return;
    }
    for_each_child(prefix.back(), remainder, slots, [&](std::uint64_t a, const BigInt& rest) {
      prefix.push_back(a);
      descend(prefix, rest);
      prefix.pop_back();
    });
  }

 private:
  void close(const std::vector<std::uint64_t>& prefix, const BigInt& remainder) {
    ++counters_.close_attempts;
    const auto inverses = invert_term_all(DyadicRational(remainder, ceiling_));
    if (inverses.empty()) {
      ++counters_.close_no_inverse;
      return;
    }
    const std::uint64_t last = prefix.back();
    for (auto a : inverses) {
      if (a <= last || a > ceiling_) {
        ++counters_.close_out_of_range;
        continue;
      }
      // 2^{a - last} | a
      if (a - last >= 64 || (a & ((std::uint64_t{1} << (a - last)) - 1)) != 0) {
        ++counters_.divisibility_rejects;
        continue;
      }
      std::vector<std::uint64_t> terms = prefix;
      terms.push_back(a);
      Solution s = make_solution(n_, terms);
      if (!product_bound_holds(s)) {
        ++counters_.product_bound_rejects;
        continue;
      }
      if (!corollary_bound_holds(s)) {
        ++counters_.corollary_bound_rejects;
        continue;
      }
      if (!verify_solution(s)) {
        throw std::logic_error("search accepted a non-solution: " + s.to_string());
      }
      ++counters_.solutions;
      out_.push_back(std::move(s));
    }
  }

  std::uint64_t k_;
  std::uint64_t n_;
  std::uint64_t ceiling_;
  PruneCounters& counters_;
  std::vector<Solution>& out_;
  std::vector<BigInt> tail_lower_;  // indexed by slot count
};

}  // namespace

std::string to_string(CeilingRule rule) {
  return rule == CeilingRule::kTheorem ? "theorem" : "corollary";
}

CeilingRule parse_ceiling_rule(std::string_view text) {
  if (text == "theorem") return CeilingRule::kTheorem;
  if (text == "corollary") return CeilingRule::kCorollary;
  throw std::invalid_argument("unknown ceiling rule '" + std::string(text) + "'");
}

std::uint64_t search_ceiling(CeilingRule rule, std::uint64_t n, std::uint64_t a1, std::uint64_t k) {
  return rule == CeilingRule::kTheorem ? ak_bound_thm(n, k) : corollary_ceiling(a1, k);
}

DyadicRational tail_upper(std::uint64_t b, std::uint64_t m) {
  if (b < 1 || m < 1) throw std::invalid_argument("tail_upper needs b >= 1 and m >= 1");
  return DyadicRational(consecutive_sum_numerator(b - 1, m), b - 1 + m);
}

DyadicRational tail_lower(std::uint64_t m, std::uint64_t a_max) {
  if (m < 1 || a_max < m + 2) throw std::invalid_argument("tail_lower needs a_max - m + 1 >= 3");
  return tail_upper(a_max - m + 1, m);
}

std::string SearchNode::to_string() const {
  std::string out = std::to_string(n) + ";";
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(prefix[i]);
  }
  return out;
}

SearchNode SearchNode::parse(std::string_view line) {
  const auto semi = line.find(';');
  if (semi == std::string_view::npos) throw std::invalid_argument("search node needs 'n;a1,...'");
  SearchNode node;
  node.n = parse_u64(line.substr(0, semi));
  std::string_view rest = line.substr(semi + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    node.prefix.push_back(parse_u64(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return node;
}

PruneCounters& PruneCounters::operator+=(const PruneCounters& o) {
  nodes += o.nodes;
  overshoot_skips += o.overshoot_skips;
  tail_upper_prunes += o.tail_upper_prunes;
  tail_lower_prunes += o.tail_lower_prunes;
  ceiling_exhausted += o.ceiling_exhausted;
  close_attempts += o.close_attempts;
  close_no_inverse += o.close_no_inverse;
  close_out_of_range += o.close_out_of_range;
  divisibility_rejects += o.divisibility_rejects;
  product_bound_rejects += o.product_bound_rejects;
  corollary_bound_rejects += o.corollary_bound_rejects;
  solutions += o.solutions;
  return *this;
}

std::vector<std::pair<std::string, std::uint64_t>> PruneCounters::items() const {
  return {
      {"nodes", nodes},
      {"overshoot_skips", overshoot_skips},
      {"tail_upper_prunes", tail_upper_prunes},
      {"tail_lower_prunes", tail_lower_prunes},
      {"ceiling_exhausted", ceiling_exhausted},
      {"close_attempts", close_attempts},
      {"close_no_inverse", close_no_inverse},
      {"close_out_of_range", close_out_of_range},
      {"divisibility_rejects", divisibility_rejects},
      {"product_bound_rejects", product_bound_rejects},
      {"corollary_bound_rejects", corollary_bound_rejects},
      {"solutions", solutions},
  };
}

std::vector<SearchNode> root_nodes(std::uint64_t n, std::uint64_t k) {
  std::vector<SearchNode> roots;
  const DyadicRational target = term_value(n);
  const std::uint64_t forced = forced_prefix_len(n, k);
  if (forced > 0) {
    SearchNode node{n, {}};
    DyadicRational used;
    for (std::uint64_t i = 1; i <= forced; ++i) {
      node.prefix.push_back(n + i);
      used = used + term_value(n + i);
    }
    if (used < target) roots.push_back(std::move(node));
    return roots;
  }
  for (std::uint64_t a1 = n + 1; a1 <= n + 3; ++a1) {
    if (term_value(a1) < target) roots.push_back(SearchNode{n, {a1}});
  }
  return roots;
}

std::vector<Solution> explore_node(const SearchNode& node, std::uint64_t k, CeilingRule rule,
                                   PruneCounters& counters) {
  std::vector<Solution> out;
  if (node.prefix.empty()) {
    for (const auto& root : root_nodes(node.n, k)) {
      auto part = explore_node(root, k, rule, counters);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }
  if (node.prefix.size() >= k) throw std::invalid_argument("search node already has k terms");
  if (node.prefix.front() < node.n + 1) throw std::invalid_argument("search node violates a_1 >= n + 1");
  for (std::size_t i = 1; i < node.prefix.size(); ++i) {
    if (node.prefix[i] <= node.prefix[i - 1]) throw std::invalid_argument("search node prefix must increase");
  }

  const std::uint64_t ceiling = search_ceiling(rule, node.n, node.prefix.front(), k);
  SubtreeSearch search(k, node.n, ceiling, counters, out);
  auto remainder = search.remainder_of(node.prefix);
  if (!remainder || *remainder <= 0) return out;
  std::vector<std::uint64_t> prefix = node.prefix;
  search.descend(prefix, *remainder);
  return out;
}

std::vector<SearchNode> initial_frontier(std::uint64_t k, CeilingRule rule, PruneCounters& counters) {
  std::vector<SearchNode> frontier;
  const std::uint64_t n_max = max_n_u64(k);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const std::uint64_t forced = forced_prefix_len(n, k);
    for (auto& root : root_nodes(n, k)) {
      const std::uint64_t slots = k - root.prefix.size();
      if (forced == 0 || slots < 2) {
        frontier.push_back(std::move(root));
        continue;
      }
      // Forced prefix: split on the first unforced term.
      std::vector<Solution> unused;
      const std::uint64_t ceiling = search_ceiling(rule, n, root.prefix.front(), k);
      SubtreeSearch search(k, n, ceiling, counters, unused);
      auto remainder = search.remainder_of(root.prefix);
      if (!remainder || *remainder <= 0) continue;
      search.for_each_child(root.prefix.back(), *remainder, slots, [&](std::uint64_t a, const BigInt&) {
        SearchNode child = root;
        child.prefix.push_back(a);
        frontier.push_back(std::move(child));
      });
    }
  }
  return frontier;
}

}  // namespace egeq
