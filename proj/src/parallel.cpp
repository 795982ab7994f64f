#include "bethe/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bethe::par {

int thread_limit() {
#ifdef _OPENMP
  int cap = 0;
  if (const char* env = std::getenv("BETHE_DIMER_THREADS")) {
    try {
      cap = std::stoi(env);
    } catch (...) {
      cap = 0;
    }
  }
  const int avail = omp_get_max_threads();
  if (cap <= 0 || cap > avail) return avail;
  return cap;
#else
  return 1;
#endif
}

}  // namespace bethe::par
