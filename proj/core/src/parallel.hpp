#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace strongfield::detail {

// Runs body(i) for i in [0, n), in parallel when OpenMP is enabled. The first
// exception thrown by any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace strongfield::detail
