#include "midlayer/parallel.hpp"

#include <omp.h>

namespace midlayer {

namespace {
int default_workers() {
  static const int workers = omp_get_max_threads();
  return workers;
}
}  // namespace

void set_worker_count(int workers) {
  const int base = default_workers();
  omp_set_num_threads(workers < 1 ? base : workers);
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace midlayer
