#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace smallf {

/// Process-wide worker count used by parallel_map when none is given.
int parallelism();
void set_parallelism(int threads);

/// out[i] = f(i) for i in [0, count), computed by `threads` workers pulling
/// indices from a shared counter. Output order never depends on scheduling;
/// if several calls throw, the exception of the lowest index is rethrown.
template <class F>
auto parallel_map(std::size_t count, F f, int threads = parallelism())
    -> std::vector<std::invoke_result_t<F, std::size_t>> {
  using R = std::invoke_result_t<F, std::size_t>;
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      threads <= 1 || count < 2 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace smallf
