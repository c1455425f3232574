#include <fstream>
#include <sstream>

#include "egeq/enumerate.hpp"

namespace egeq {
namespace {

constexpr std::string_view kMagic = "# egeq enumerate checkpoint v1";

std::uint64_t& counter_slot(PruneCounters& c, std::string_view name) {
  if (name == "nodes") return c.nodes;
  if (name == "overshoot_skips") return c.overshoot_skips;
  if (name == "tail_upper_prunes") return c.tail_upper_prunes;
  if (name == "tail_lower_prunes") return c.tail_lower_prunes;
  if (name == "ceiling_exhausted") return c.ceiling_exhausted;
  if (name == "close_attempts") return c.close_attempts;
  if (name == "close_no_inverse") return c.close_no_inverse;
  if (name == "close_out_of_range") return c.close_out_of_range;
  if (name == "divisibility_rejects") return c.divisibility_rejects;
  if (name == "product_bound_rejects") return c.product_bound_rejects;
  if (name == "corollary_bound_rejects") return c.corollary_bound_rejects;
  if (name == "solutions") return c.solutions;
  throw std::invalid_argument("unknown counter in checkpoint: " + std::string(name));
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& state) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << kMagic << '\n';
    out << "# k=" << state.k << '\n';
    out << "# rule=" << to_string(state.rule) << '\n';
    for (const auto& [name, value] : state.counters.items()) out << "# counter " << name << '=' << value << '\n';
    for (const auto& s : state.solutions) out << "# solution " << s.to_string() << '\n';
    for (const auto& node : state.frontier) out << node.to_string() << '\n';
    if (!out) throw std::runtime_error("short write on checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  Checkpoint state;
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw std::invalid_argument("not an egeq checkpoint: " + path.string());
  }
  bool have_k = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string_view view = line;
    if (view.front() != '#') {
      state.frontier.push_back(SearchNode::parse(view));
      continue;
    }
    view.remove_prefix(1);
    while (!view.empty() && view.front() == ' ') view.remove_prefix(1);
    if (view.starts_with("k=")) {
      state.k = std::stoull(std::string(view.substr(2)));
      have_k = true;
    } else if (view.starts_with("rule=")) {
      state.rule = parse_ceiling_rule(view.substr(5));
    } else if (view.starts_with("counter ")) {
      view.remove_prefix(8);
      const auto eq = view.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("bad counter line in checkpoint");
      counter_slot(state.counters, view.substr(0, eq)) = std::stoull(std::string(view.substr(eq + 1)));
    } else if (view.starts_with("solution ")) {
      const SearchNode node = SearchNode::parse(view.substr(9));
      Solution s = make_solution(node.n, node.prefix);
      if (!verify_solution(s)) throw std::invalid_argument("checkpoint holds a non-solution: " + s.to_string());
      state.solutions.push_back(std::move(s));
    }
  }
  if (!have_k) throw std::invalid_argument("checkpoint is missing its k line");
  return state;
}

}  // namespace egeq
