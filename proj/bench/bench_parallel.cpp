// Times the OpenMP kernels against their serial reference paths and prints
// the speedup. Thread count follows BETHE_DIMER_THREADS (0 or unset = all).

#include <chrono>
#include <cstdio>

#include "bethe/bae.hpp"
#include "bethe/checks.hpp"
#include "bethe/parallel.hpp"

using namespace bethe;

namespace {

template <class Fn>
double seconds(Fn&& fn) {
  const auto begin = std::chrono::steady_clock::now();
  fn();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - begin;
  return elapsed.count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-24s %9.3f s %9.3f s %7.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", par::thread_limit());
  std::printf("%-24s %11s %11s %8s\n", "kernel", "serial", "parallel", "speedup");

  {
    const ABAParams p{1.0, 0.3};
    SolverConfig cfg;
    cfg.attempts = 3000;
    cfg.seed = 1;
    cfg.exec = par::Exec::Serial;
    double s = 0, q = 0;
    s = seconds([&] { find_all_solutions(p, 6, cfg); });
    cfg.exec = par::Exec::Parallel;
    q = seconds([&] { find_all_solutions(p, 6, cfg); });
    report("multi_start_solver", s, q);
  }
  {
    double s = seconds([&] { formula_oracle_batch(6, 3000, 1, 1e-9, 1e-8, par::Exec::Serial); });
    double q = seconds([&] { formula_oracle_batch(6, 3000, 1, 1e-9, 1e-8, par::Exec::Parallel); });
    report("formula_oracle_batch", s, q);
  }
  {
    double s = seconds([&] { rll_sweep(100, 8, 1, par::Exec::Serial); });
    double q = seconds([&] { rll_sweep(100, 8, 1, par::Exec::Parallel); });
    report("rll_sweep", s, q);
  }
  {
    const ABAParams p{1.0, 0.3};
    double s = seconds([&] { transfer_commutativity_sweep(p, 12, 50, 1, par::Exec::Serial); });
    double q = seconds([&] { transfer_commutativity_sweep(p, 12, 50, 1, par::Exec::Parallel); });
    report("transfer_commutativity", s, q);
  }
  return 0;
}
