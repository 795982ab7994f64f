#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bethe/bae.hpp"
#include "bethe/checks.hpp"
#include "bethe/parallel.hpp"

using namespace bethe;

// The parallel drivers must reproduce the serial reference bit for bit:
// work items are independent and reductions happen in a fixed order.

TEST_CASE("multi-start solver: parallel equals serial") {
  const ABAParams p{1.0, 0.3};
  SolverConfig cfg;
  cfg.attempts = 400;
  cfg.seed = 42;

  const SolveReport parallel = find_all_solutions(p, 4, cfg);
  const SolveReport serial = find_all_solutions_serial(p, 4, cfg);

  REQUIRE(parallel.solutions.size() == serial.solutions.size());
  CHECK(parallel.converged == serial.converged);
  for (std::size_t i = 0; i < parallel.solutions.size(); ++i) {
    const TaggedSolution& a = parallel.solutions[i];
    const TaggedSolution& b = serial.solutions[i];
    CHECK(a.energy == b.energy);
    CHECK(a.norm2 == b.norm2);
    REQUIRE(a.roots.v.size() == b.roots.v.size());
    for (std::size_t k = 0; k < a.roots.v.size(); ++k) CHECK(a.roots.v[k] == b.roots.v[k]);
  }
}

TEST_CASE("verification sweeps: parallel equals serial") {
  CHECK(yang_baxter_sweep(60, 7, par::Exec::Parallel) ==
        yang_baxter_sweep(60, 7, par::Exec::Serial));
  CHECK(rll_sweep(20, 6, 7, par::Exec::Parallel) == rll_sweep(20, 6, 7, par::Exec::Serial));
  CHECK(assembly_off_shell_sweep(5, 60, 7, par::Exec::Parallel) ==
        assembly_off_shell_sweep(5, 60, 7, par::Exec::Serial));

  const FormulaBatchResult a = formula_oracle_batch(4, 60, 7, 1e-9, 1e-8, par::Exec::Parallel);
  const FormulaBatchResult b = formula_oracle_batch(4, 60, 7, 1e-9, 1e-8, par::Exec::Serial);
  CHECK(a.worst_scalar_ratio == b.worst_scalar_ratio);
  CHECK(a.worst_form_factor_ratio == b.worst_form_factor_ratio);
  CHECK(a.worst_scalar_rel == b.worst_scalar_rel);
  CHECK(a.worst_form_factor_rel == b.worst_form_factor_rel);
}

TEST_CASE("thread cap respects the environment") {
  CHECK(par::thread_limit() >= 1);
}
