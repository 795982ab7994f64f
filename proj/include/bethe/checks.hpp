#ifndef BETHE_CHECKS_HPP
#define BETHE_CHECKS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bethe/bae.hpp"
#include "bethe/correlators.hpp"

namespace bethe {

/// Randomized and grid sweeps over the algebraic identities of the
/// construction. Each sweep evaluates independent draws (parallel kernel
/// with a serial reference path via exec) and reduces order-independently,
/// so results are identical for a fixed seed under any schedule.

/// Worst Yang-Baxter residual over random (u, v, eta) draws; denominators
/// |u+eta|, |v+eta|, |u-v+eta| are kept above 0.1.
double yang_baxter_sweep(int draws, std::uint64_t seed, par::Exec exec = par::Exec::Parallel);

/// Worst RLL residual over random (u, v, eta) draws at the given cutoff.
double rll_sweep(int draws, int cutoff, std::uint64_t seed, par::Exec exec = par::Exec::Parallel);

/// Worst relative commutator norm ||[t(u),t(v)]||_max / (||t(u)|| ||t(v)||)
/// over random spectral-parameter pairs and sectors 0..max_n.
double transfer_commutativity_sweep(const ABAParams& p, int max_n, int pairs, std::uint64_t seed,
                                    par::Exec exec = par::Exec::Parallel);

/// Worst residual of H = -(ej/2)[t(0) + (w^2 - eta^-2) I - eta^2 N^2/4 I]
/// over a coupling grid and sectors 0..max_n.
double hamiltonian_identity_sweep(std::span<const double> interactions,
                                  std::span<const double> potentials,
                                  std::span<const double> tunnellings, int max_n,
                                  par::Exec exec = par::Exec::Parallel);

/// Worst entrywise relative disagreement between the C-table recursion, the
/// closed form, and the ladder-operator expansion, for n <= max_n.
double c_table_agreement(int max_n, std::span<const double> etas);

/// Worst commutator-corrected binomial residual over random matrix pairs.
double binomial_identity_sweep(int n, int pairs, int dim, std::uint64_t seed,
                               par::Exec exec = par::Exec::Parallel);

/// Worst word-expansion residual over random matrix pairs for 1 <= n <= max_n.
double permutation_expansion_sweep(int max_n, int dim, std::uint64_t seed);

/// Worst || D^n|0> - eta^(-2n)|0> || for n <= max_n over the given etas.
double d_power_vacuum_sweep(int max_n, std::span<const double> etas);

/// Worst relative gap between the assembled state and the product-form
/// oracle over every solved root set for sectors 1..max_n.
double assembly_on_shell_sweep(const ABAParams& p, int max_n, const SolverConfig& cfg);

/// Same gap over random off-shell root sets (random eta, omega per draw).
double assembly_off_shell_sweep(int max_n, int draws, std::uint64_t seed,
                                par::Exec exec = par::Exec::Parallel);

/// Formula-versus-oracle batch for the scalar product and the imbalance
/// form factor over random off-shell draws in one sector. Reports the worst
/// |formula - oracle| / allowance where the allowance is
/// max(rel_tol |oracle|, abs_tol ||bra|| ||ket||); a value <= 1 passes.
struct FormulaBatchResult {
  double worst_scalar_ratio = 0.0;
  double worst_form_factor_ratio = 0.0;
  double worst_scalar_rel = 0.0;       // raw relative errors, for reporting
  double worst_form_factor_rel = 0.0;
};

FormulaBatchResult formula_oracle_batch(int N, int draws, std::uint64_t seed, double rel_tol,
                                        double abs_tol, par::Exec exec = par::Exec::Parallel);

/// Completeness of the solver against exact diagonalization in one sector.
struct CompletenessResult {
  int found = 0;
  int expected = 0;
  bool complete = false;
  double worst_energy_gap = 0.0;  // |E_bethe - E_exact| / max(1, |E_exact|)
  double worst_eigvec_residual = 0.0;
};

CompletenessResult completeness_check(const ABAParams& p, int N, const SolverConfig& cfg);

/// Worst |<a|b>| / (||a|| ||b||) over distinct-energy on-shell pairs of one
/// sector, evaluated with the coefficient-sum formula.
double on_shell_orthogonality(const SolveReport& report, const ABAParams& p, int N);

/// One named check of the verification suite.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

struct VerifySettings {
  int N = 6;
  ABAParams params{1.0, 0.3};
  double tol = 1e-10;
  int attempts = 0;  // 0 means 200*(N+1)
  std::uint64_t seed = 0;
  par::Exec exec = par::Exec::Parallel;
};

/// The full invariant suite, one CheckResult per identity family.
std::vector<CheckResult> run_verification(const VerifySettings& settings);

}  // namespace bethe

#endif
