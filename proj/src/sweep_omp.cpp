#include <exception>
#include <mutex>

#include <omp.h>

#include "egeq/greedy.hpp"

namespace egeq {

std::vector<SweepRow> sweep(std::uint64_t n_min, std::uint64_t n_max, std::uint64_t max_k, int jobs) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("sweep needs 2 <= n_min <= n_max");
  const auto count = static_cast<std::int64_t>(n_max - n_min + 1);
  std::vector<SweepRow> rows(static_cast<std::size_t>(count));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

  // Run lengths vary by orders of magnitude between neighbouring n.
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = sweep_row(n_min + static_cast<std::uint64_t>(i), max_k);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace egeq
