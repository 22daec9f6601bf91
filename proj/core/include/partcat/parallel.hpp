#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace partcat {

/// Worker count used by the parallel helpers; 0 means hardware concurrency.
std::size_t& worker_threads();

/// Splits [0, count) into a fixed number of chunks, maps each chunk with
/// `map(begin, end)` on a thread pool and folds the results in chunk order,
/// so the outcome does not depend on the thread count.
template <class T, class Map, class Fold>
T parallel_chunks(std::size_t count, T init, Map map, Fold fold, std::size_t chunks = 64) {
  chunks = std::max<std::size_t>(1, std::min(chunks, count));
  std::vector<T> parts(chunks, init);
  std::size_t threads = worker_threads();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, chunks);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(chunks);
  auto work = [&] {
    for (std::size_t c; (c = next++) < chunks;) {
      try {
        parts[c] = map(count * c / chunks, count * (c + 1) / chunks);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& p : parts) init = fold(std::move(init), std::move(p));
  return init;
}

}  // namespace partcat
