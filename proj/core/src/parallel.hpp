#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace aperiodica::detail {

// out[i] = fn(i) for i < n, striped over up to `workers` threads. Results land
// in index order, so the outcome does not depend on the worker count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, std::size_t workers, Fn&& fn) {
  std::vector<T> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t k = workers < n ? workers : n;
  std::vector<std::exception_ptr> errors(k);
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (std::size_t w = 0; w < k; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += k) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace aperiodica::detail
