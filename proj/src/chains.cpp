#include "egeq/chains.hpp"

#include <string>

namespace egeq {
namespace {

Rational prefix_value(std::span<const std::uint64_t> terms) {
  Rational sum = 0;
  for (auto a : terms) sum += term_value(a).to_rational();
  return sum;
}

class Fnv1a {
 public:
  void add(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (value >> (8 * i)) & 0xff;
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

Rational tail_sum(std::uint64_t p, std::uint64_t q) {
  if (p < 1 || q < 1) throw std::invalid_argument("tail_sum needs p >= 1 and q >= 1");
  BigInt two_p = 1;
  two_p <<= p;
  BigInt num = BigInt(static_cast<unsigned long>(q + p)) * two_p - static_cast<unsigned long>(q);
  BigInt den = 1;
  den <<= q;
  den *= (two_p - 1) * (two_p - 1);
  return make_rational(num, den);
}

Rational ProgressionRepresentation::value() const { return prefix_value(prefix) + tail_sum(p, q); }

std::vector<std::uint64_t> ProgressionRepresentation::terms(std::uint64_t progression_terms) const {
  std::vector<std::uint64_t> out = prefix;
  for (std::uint64_t i = 1; i <= progression_terms; ++i) out.push_back(p * i + q);
  return out;
}

DyadicRational ProgressionRepresentation::truncated(std::uint64_t progression_terms) const {
  DyadicRational sum;
  for (auto a : terms(progression_terms)) sum = sum + term_value(a);
  return sum;
}

std::array<ProgressionRepresentation, 3> three_representations(std::uint64_t p, std::uint64_t q) {
  if (p < 1 || q < 1 || p + q < kMinProgressionStart) {
    throw std::invalid_argument("three_representations needs p, q >= 1 and p + q >= 17");
  }
  std::array<ProgressionRepresentation, 3> reps{
      ProgressionRepresentation{{3, 6, 8}, p, q},
      ProgressionRepresentation{{4, 5, 6}, p, q},
      ProgressionRepresentation{{4, 5, 7, 8, 11, 13, 14}, p, q},
  };
  const Rational target = Rational(1, 2) + tail_sum(p, q);
  for (const auto& rep : reps) {
    if (rep.value() != target) throw std::logic_error("progression representation has the wrong value");
  }
  return reps;
}

std::uint64_t term_digest(std::span<const std::uint64_t> terms) {
  Fnv1a h;
  for (auto a : terms) h.add(a);
  return h.value();
}

Chain expand_chain(std::uint64_t a_start, std::uint64_t depth, const ChainOptions& options) {
  if (a_start < 3) throw std::invalid_argument("expand_chain needs a_start >= 3");
  if (depth < 1) throw std::invalid_argument("expand_chain needs depth >= 1");
  Chain chain;
  chain.a_start = a_start;
  std::uint64_t source = a_start;
  std::vector<std::uint64_t> terms;
  for (std::uint64_t i = 1; i <= depth; ++i) {
    terms.clear();
    // a/2^a for a >= 3 starts its greedy run at x_{a+1} = a.
    const GreedyRun run =
        run_integer_greedy(source + 1, source, options.max_k, [&](std::uint64_t a) { terms.push_back(a); });
    if (!run.terminated) {
      chain.exhausted = true;
      break;
    }
    ChainStep step;
    step.index = i;
    step.source = source;
    step.k = run.k;
    step.first_term = run.first_term;
    step.last_term = run.last_term;
    step.digest = term_digest(terms);
    step.verified = step.first_term > source && representation_equals(terms, term_value(source));
    if (i <= options.keep_terms_depth) step.terms = terms;
    if (options.on_terms) options.on_terms(step, terms);
    source = step.last_term;
    chain.steps.push_back(std::move(step));
  }
  return chain;
}

std::uint64_t representation_count_certificate(const Chain& chain) {
  std::uint64_t source = chain.a_start;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const ChainStep& step = chain.steps[i];
    const std::uint64_t index = i + 1;
    auto fail = [&](const std::string& why) {
      throw ChainCertificationError(index, "chain step " + std::to_string(index) + ": " + why);
    };
    if (step.index != index) fail("index out of sequence");
    if (step.source != source) fail("does not expand the previous last term");
    if (step.k < 1 || step.first_term <= source || step.last_term < step.first_term) fail("bad term range");
    if (!step.verified) fail("expansion sum was not verified");
    if (step.terms) {
      const auto& terms = *step.terms;
      if (terms.size() != step.k || terms.front() != step.first_term || terms.back() != step.last_term) {
        fail("stored terms disagree with the summary");
      }
      for (std::size_t j = 1; j < terms.size(); ++j) {
        if (terms[j] <= terms[j - 1]) fail("stored terms do not increase");
      }
      if (term_digest(terms) != step.digest) fail("digest mismatch");
      if (!representation_equals(terms, term_value(source))) fail("stored terms do not sum to the source term");
    }
    source = step.last_term;
  }
  return chain.steps.size() + 1;
}

}  // namespace egeq
