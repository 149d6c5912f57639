#pragma once

#include <cstddef>
#include <exception>

namespace midlayer {

// Sets the number of OpenMP workers used by the parallel kernels.
// Values < 1 restore the runtime default. Results never depend on it.
void set_worker_count(int workers);
int worker_count();

// body(i) for every i in [0, n), dynamically scheduled. An exception from
// any iteration is rethrown once the loop has drained.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(midlayer_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace midlayer
