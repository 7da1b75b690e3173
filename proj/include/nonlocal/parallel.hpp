#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nonlocal {

/// Worker count: `requested` if positive, else NSOLVE_THREADS if set to a
/// positive integer, else the number of hardware threads.
int resolve_thread_count(int requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work items
/// are claimed in index order; callers write results into pre-sized slots so
/// the output does not depend on scheduling. The first exception thrown by
/// any item is rethrown after all workers have stopped.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(threads > 0 ? threads : 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex lock;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t item;
      {
        std::scoped_lock guard(lock);
        if (next >= count || failure) return;
        item = next++;
      }
      try {
        body(item);
      } catch (...) {
        std::scoped_lock guard(lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace nonlocal
