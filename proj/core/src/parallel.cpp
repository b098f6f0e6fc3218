#include "ildepth/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ild {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t begin, std::size_t end, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (begin >= end) return;
  std::size_t total = end - begin;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), total);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = total / workers;
  std::size_t extra = total % workers;
  std::size_t next = begin;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t len = chunk + (w < extra ? 1 : 0);
    std::size_t lo = next;
    std::size_t hi = lo + len;
    next = hi;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ild
