#include "egeq/greedy.hpp"

#include <string>

namespace egeq {
namespace {

void require_open_interval(const Rational& x) {
  if (x <= 0 || x >= 2) throw std::invalid_argument("greedy expansion needs 0 < x < 2");
}

Rational times_power_of_two(const Rational& x, std::uint64_t e) {
  Rational out;
  mpq_mul_2exp(out.get_mpq_t(), x.get_mpq_t(), e);
  return out;
}

bool fits_integer_path(const Rational& x) {
  return x.get_den() == 1 && x.get_num().fits_ulong_p();
}

}  // namespace

std::uint64_t k_zero(const Rational& x) {
  require_open_interval(x);
  // k/2^k < x  <=>  k < x * 2^k
  std::uint64_t k = 1;
  Rational scaled = times_power_of_two(x, 1);
  while (!(scaled > static_cast<unsigned long>(k))) {
    ++k;
    mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), 1);
  }
  return k;
}

GreedyState initial_state(const Rational& x) {
  GreedyState state;
  state.index = k_zero(x);
  state.x = times_power_of_two(x, state.index - 1);
  return state;
}

GreedyState advance(GreedyState state) {
  if (state.x <= 0) throw std::invalid_argument("advance needs x_i > 0");
  Rational twice = times_power_of_two(state.x, 1);
  Rational taken = twice - static_cast<unsigned long>(state.index);
  if (taken >= 0) {
    state.emitted.push_back(state.index);
    state.x = std::move(taken);
  } else {
    state.x = std::move(twice);
  }
  ++state.index;
  return state;
}

GreedyRun run_integer_greedy(std::uint64_t index, std::uint64_t x, std::uint64_t max_k,
                             const std::function<void(std::uint64_t)>& on_term) {
  GreedyRun run;
  while (x != 0) {
    if (x >= index + 1) {
      throw FeasibilityViolation("x_" + std::to_string(index) + " = " + std::to_string(x) + " breaks x_i < i + 1");
    }
    const std::uint64_t twice = 2 * x;
    if (twice >= index) {
      if (run.k == max_k) return run;
      if (run.k == 0) run.first_term = index;
      run.last_term = index;
      ++run.k;
      if (on_term) on_term(index);
      x = twice - index;
    } else {
      x = twice;
    }
    ++index;
    ++run.steps;
  }
  run.terminated = true;
  return run;
}

std::optional<std::vector<std::uint64_t>> greedy_representation(const Rational& x, std::uint64_t max_k) {
  GreedyState state = initial_state(x);
  std::vector<std::uint64_t> terms;

  // Exact rational steps until the state becomes a machine integer, then the
  // integer path. For x = m/2^e the switch happens immediately.
  while (state.x != 0 && !fits_integer_path(state.x)) {
    if (state.x >= static_cast<unsigned long>(state.index + 1)) {
      throw FeasibilityViolation("rational state breaks x_i < i + 1 at i = " + std::to_string(state.index));
    }
    const std::size_t before = state.emitted.size();
    const bool would_take = times_power_of_two(state.x, 1) >= static_cast<unsigned long>(state.index);
    if (would_take && before == max_k) return std::nullopt;
    state = advance(std::move(state));
  }
  terms = std::move(state.emitted);
  if (state.x != 0) {
    if (terms.size() > max_k) return std::nullopt;
    const GreedyRun run = run_integer_greedy(state.index, state.x.get_num().get_ui(), max_k - terms.size(),
                                             [&](std::uint64_t a) { terms.push_back(a); });
    if (!run.terminated) return std::nullopt;
  }
  if (!representation_equals(terms, x)) {
    throw std::logic_error("greedy produced terms that do not sum to " + to_string(x));
  }
  return terms;
}

std::optional<std::vector<std::uint64_t>> greedy_terms_for_n(std::uint64_t n, std::uint64_t max_k) {
  if (n < 2) throw std::invalid_argument("greedy_for_n needs n >= 2");
  // k0 = n + 1 for x = n/2^n, n >= 2, so the sequence starts at x_{n+1} = n.
  std::vector<std::uint64_t> terms;
  const GreedyRun run = run_integer_greedy(n + 1, n, max_k, [&](std::uint64_t a) { terms.push_back(a); });
  if (!run.terminated) return std::nullopt;
  if (!representation_equals(terms, term_value(n))) {
    throw std::logic_error("greedy output for n = " + std::to_string(n) + " failed exact verification");
  }
  return terms;
}

std::optional<GreedyForN> greedy_for_n(std::uint64_t n, std::uint64_t max_k) {
  auto terms = greedy_terms_for_n(n, max_k);
  if (!terms) return std::nullopt;
  GreedyForN out;
  out.k = terms->size();
  out.rep = make_solution(n, *terms);
  return out;
}

SweepRow sweep_row(std::uint64_t n, std::uint64_t max_k) {
  SweepRow row;
  row.n = n;
  const auto terms = greedy_terms_for_n(n, max_k);
  if (terms) {
    row.terminated = true;
    row.k = terms->size();
    row.a_1 = terms->front();
    row.a_k = terms->back();
  }
  return row;
}

std::vector<SweepRow> sweep_serial(std::uint64_t n_min, std::uint64_t n_max, std::uint64_t max_k) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("sweep needs 2 <= n_min <= n_max");
  std::vector<SweepRow> rows;
  rows.reserve(n_max - n_min + 1);
  for (std::uint64_t n = n_min; n <= n_max; ++n) rows.push_back(sweep_row(n, max_k));
  return rows;
}

}  // namespace egeq
