#include <algorithm>
#include <exception>
#include <mutex>

#include <omp.h>

#include "egeq/enumerate.hpp"

namespace egeq {
namespace {

using Clock = std::chrono::steady_clock;

// Completion bookkeeping shared by the workers; touched only once per
// finished frontier node.
class Ledger {
 public:
  Ledger(const Checkpoint& base, const EnumerateOptions& options)
      : base_(base), options_(options), done_(base.frontier.size(), 0),
        found_(base.frontier.size()), counted_(base.frontier.size()), last_write_(Clock::now()) {}

  void finish(std::size_t index, std::vector<Solution> solutions, const PruneCounters& counters) {
    std::lock_guard lock(mutex_);
    done_[index] = 1;
    found_[index] = std::move(solutions);
    counted_[index] = counters;
    ++done_count_;
    if (options_.progress) options_.progress(done_count_, done_.size());
    if (options_.checkpoint && Clock::now() - last_write_ >= options_.checkpoint_interval) {
      write_checkpoint(*options_.checkpoint, snapshot());
      last_write_ = Clock::now();
    }
  }

  // Merged in frontier order so the result does not depend on scheduling.
  Checkpoint snapshot() const {
    Checkpoint state;
    state.k = base_.k;
    state.rule = base_.rule;
    state.solutions = base_.solutions;
    state.counters = base_.counters;
    for (std::size_t i = 0; i < done_.size(); ++i) {
      if (done_[i]) {
        state.solutions.insert(state.solutions.end(), found_[i].begin(), found_[i].end());
        state.counters += counted_[i];
      } else {
        state.frontier.push_back(base_.frontier[i]);
      }
    }
    std::sort(state.solutions.begin(), state.solutions.end());
    return state;
  }

 private:
  const Checkpoint& base_;
  const EnumerateOptions& options_;
  std::mutex mutex_;
  std::vector<char> done_;
  std::vector<std::vector<Solution>> found_;
  std::vector<PruneCounters> counted_;
  std::size_t done_count_ = 0;
  Clock::time_point last_write_;
};

}  // namespace

EnumerationResult enumerate_solutions(std::uint64_t k, const EnumerateOptions& options) {
  Checkpoint base;
  if (options.resume && options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
    base = read_checkpoint(*options.checkpoint);
    if (base.k != k) throw std::invalid_argument("checkpoint was written for a different k");
    if (base.rule != options.rule) throw std::invalid_argument("checkpoint was written with a different ceiling rule");
  } else {
    base.k = k;
    base.rule = options.rule;
    base.frontier = initial_frontier(k, options.rule, base.counters);
  }

  const int jobs = options.jobs > 0 ? options.jobs : omp_get_max_threads();
  const auto total = static_cast<std::int64_t>(base.frontier.size());
  Ledger ledger(base, options);
  std::exception_ptr failure;
  std::mutex failure_mutex;

#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      PruneCounters counters;
      auto found = explore_node(base.frontier[i], k, options.rule, counters);
      ledger.finish(static_cast<std::size_t>(i), std::move(found), counters);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Checkpoint final_state = ledger.snapshot();
  if (options.checkpoint) write_checkpoint(*options.checkpoint, final_state);

  EnumerationResult result;
  result.solutions = std::move(final_state.solutions);
  result.counters = final_state.counters;
  result.frontier_size = base.frontier.size();
  return result;
}

}  // namespace egeq
