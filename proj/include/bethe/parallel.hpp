#ifndef BETHE_PARALLEL_HPP
#define BETHE_PARALLEL_HPP

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bethe::par {

enum class Exec { Serial, Parallel };

// Thread cap from BETHE_DIMER_THREADS (0 or unset means all available).
int thread_limit();

// Runs body(i) for i in [0, n). Every work item must be independent and
// write only to its own output slot; the Parallel driver then produces
// results identical to the Serial reference regardless of schedule.
template <class Body>
void for_each_index(std::size_t n, Body&& body, Exec exec = Exec::Parallel) {
#ifdef _OPENMP
  if (exec == Exec::Parallel && n > 1) {
    const int threads = thread_limit();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)exec;
#endif
  // Serial reference path, also the fallback without OpenMP.
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace bethe::par

#endif
