#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dpo {

// Runs body(i) for i in [0, n) across hardware threads with static index
// partitioning. Bodies must be independent; callers keep determinism by
// writing to index-addressed slots and reducing sequentially afterwards.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body,
                         unsigned threads = 0) {
  if (n <= 0) return;
  unsigned hw = threads ? threads : std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (hw > static_cast<unsigned>(n)) hw = static_cast<unsigned>(n);
  if (hw <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(hw);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < hw; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::int64_t i = w; i < n; i += hw) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dpo
