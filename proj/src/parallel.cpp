#include "dires/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dires {

namespace {
int g_jobs = 0;
}

void set_jobs(int jobs) { g_jobs = jobs < 0 ? 0 : jobs; }

int effective_jobs() {
#ifdef _OPENMP
  return g_jobs > 0 ? g_jobs : omp_get_max_threads();
#else
  return 1;
#endif
}

void serial_for(std::int64_t n, const std::function<void(std::int64_t)>& f) {
  for (std::int64_t i = 0; i < n; ++i) f(i);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& f) {
  int jobs = effective_jobs();
  if (jobs <= 1 || n <= 1) {
    serial_for(n, f);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::int64_t i = 0; i < n; ++i) f(i);
#else
  serial_for(n, f);
#endif
}

}  // namespace dires
