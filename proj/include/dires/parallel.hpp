#pragma once

#include <cstdint>
#include <functional>

namespace dires {

// Worker-pool size used by the parallel kernels. 0 = hardware default.
void set_jobs(int jobs);
int effective_jobs();

// Runs f(i) for i in [0, n). With jobs == 1 this is the plain serial loop;
// otherwise iterations are distributed over an OpenMP pool. Results must be
// written to caller-owned slots indexed by i so the output is independent of
// scheduling.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& f);

// Serial twin kept as the reference implementation for tests and benchmarks.
void serial_for(std::int64_t n, const std::function<void(std::int64_t)>& f);

}  // namespace dires
