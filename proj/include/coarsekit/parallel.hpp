#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace coarsekit {

// Worker count from COARSEKIT_THREADS; 1 when unset or invalid.
inline std::size_t thread_count() {
  const char* env = std::getenv("COARSEKIT_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  long n = std::strtol(env, &end, 10);
  if (end == env || n < 1) return 1;
  return static_cast<std::size_t>(std::min<long>(n, 256));
}

// Result of fn(i) for the least i in [0, n) where fn returns a value, exactly
// as a sequential ascending scan would produce it. An exception thrown at
// index k is rethrown only if no smaller index produced a value.
template <class T, class Fn>
std::optional<T> find_first(std::size_t n, Fn&& fn) {
  std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (auto r = fn(i)) return r;
    return std::nullopt;
  }
  struct Hit {
    std::size_t index = SIZE_MAX;
    std::optional<T> value;
    std::exception_ptr error;
  };
  std::vector<Hit> hits(workers);
  std::atomic<std::size_t> best{n};
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      std::size_t lo = t * chunk;
      std::size_t hi = std::min(n, lo + chunk);
      for (std::size_t i = lo; i < hi && i < best.load(); ++i) {
        try {
          if (auto r = fn(i)) {
            hits[t] = {i, std::move(r), nullptr};
          } else {
            continue;
          }
        } catch (...) {
          hits[t] = {i, std::nullopt, std::current_exception()};
        }
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    });
  }
  for (auto& th : pool) th.join();
  const Hit* first = nullptr;
  for (const auto& h : hits)
    if (h.index != SIZE_MAX && (!first || h.index < first->index)) first = &h;
  if (!first) return std::nullopt;
  if (first->error) std::rethrow_exception(first->error);
  return first->value;
}

// fn(i) for every i in [0, n), split into contiguous chunks. The first
// exception (by chunk) is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t * chunk; i < std::min(n, (t + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace coarsekit
