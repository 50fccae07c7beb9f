#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace polyrad {

/// Number of worker threads used by parallel_map. Defaults to the hardware
/// concurrency. Results never depend on this value.
unsigned thread_count();
void set_thread_count(unsigned threads);

namespace detail {
bool& inside_worker();
}  // namespace detail

/// Evaluates fn(0), ..., fn(count - 1) on up to thread_count() threads and
/// returns the results in index order. Calls made from inside a worker run
/// serially, so nested estimators do not oversubscribe.
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using T = std::invoke_result_t<Fn&, std::size_t>;
  const unsigned threads =
      detail::inside_worker() ? 1u : std::min<std::size_t>(thread_count(), count);
  if (threads <= 1) {
    std::vector<T> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }

  std::vector<std::optional<T>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    detail::inside_worker() = true;
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
    detail::inside_worker() = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace polyrad
