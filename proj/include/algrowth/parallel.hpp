#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace algrowth {

/// Worker count for the internal parallel loops. Defaults to the value of
/// ALGROWTH_THREADS, or 1. Results never depend on this value.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n) across thread_count() workers and returns
/// the results in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& body);

namespace detail {
void run_parallel(std::size_t n, const std::function<void(std::size_t)>& body);
}

template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& body) {
  std::vector<T> out(n);
  detail::run_parallel(n, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

}  // namespace algrowth
