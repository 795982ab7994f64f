#ifndef BETHE_BAE_HPP
#define BETHE_BAE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bethe/betvec.hpp"
#include "bethe/integrable.hpp"
#include "bethe/parallel.hpp"

namespace bethe {

/// A solved set of N rapidities in canonical order (lexicographic by real,
/// then imaginary part), with no coinciding pair and no pair at distance eta.
struct BetheRoots {
  std::vector<Complex> v;
  double residual = 0.0;      // scaled residual, the convergence metric
  double residual_raw = 0.0;  // max |polynomial residual|
  ABAParams params;
};

/// Polynomial (cleared-denominator) residuals
///   g_i = eta^2 (v_i^2 - omega^2) prod_{j!=i}(v_i - v_j + eta)
///         - prod_{j!=i}(v_i - v_j - eta),
/// finite everywhere, zero exactly on Bethe root sets.
std::vector<Complex> bae_residual(std::span<const Complex> roots, const ABAParams& p);

/// max_i |g_i| / s_i with s_i = max(1, |term1_i|, |term2_i|). The raw
/// polynomial values grow like |v|^(2N) and hit the double-precision
/// rounding floor far above any fixed absolute tolerance at large N; the
/// scaled form is what the solver drives below tol.
double bae_residual_scaled(std::span<const Complex> roots, const ABAParams& p);

/// Newton iteration on the polynomial form with analytic Jacobian and a
/// backtracking line search on the scale-weighted residual. Returns the
/// canonical-ordered roots on convergence, nullopt on non-convergence or
/// when the limit violates the coinciding/singular-pair invariants.
///
/// Near-string root sets (pairs within ~1e-5 of distance eta) have residual
/// floors above any fixed tolerance; an iterate whose line search stalls is
/// still accepted when every residual row sits at the working-precision
/// floor eps*|J||v| implied by its Jacobian row. Such sets carry a residual
/// above tol. Stalls away from a root fail this test and are rejected.
std::optional<BetheRoots> solve_newton(std::vector<Complex> initial, const ABAParams& p,
                                       double tol, int max_iter);

/// A root set tagged with the eigenstate data its Bethe vector reproduces
/// (Hamiltonian in the ej = 1 convention of to_physical).
struct TaggedSolution {
  BetheRoots roots;
  double energy = 0.0;           // Rayleigh quotient
  double eigvec_residual = 0.0;  // ||H psi - lambda psi|| / ||psi||
  Eigen::VectorXcd state;        // unnormalized sector vector
  double norm2 = 0.0;
  bool conjugation_closed = true;
  bool seeded = false;  // recovered by the eigenvector completion pass
};

struct SolveReport {
  std::vector<TaggedSolution> solutions;  // sorted by energy
  bool complete = false;                  // found at least N+1 distinct sets
  int attempts = 0;
  int converged = 0;
  int seeded_found = 0;
};

struct SolverConfig {
  int attempts = 200;
  double tol = 1e-10;
  int max_iter = 80;
  std::uint64_t seed = 0;
  double radius_scale = 2.0;  // start disk radius = scale*(|w| + 1/|eta| + |eta| N)
  double ej = 1.0;            // tunnelling amplitude of the tagging Hamiltonian
  par::Exec exec = par::Exec::Parallel;
};

/// Start disk radius for random initials.
double start_radius(const ABAParams& p, int N, double scale = 2.0);

/// Multi-start Newton over independent random initials (the parallel
/// kernel), followed by order-independent dedup, eigenstate tagging, and an
/// energy sort. Output is identical for a fixed seed regardless of schedule.
///
/// When random starts leave sectors short of N+1 sets, a completion pass
/// inverts the missing exact eigenvectors into candidate rapidities
/// (roots_from_state), polishes them with the same Newton iteration, and
/// keeps them only if they pass the identical residual and separation
/// checks. Extreme eigenstates sit exponentially close to root
/// configurations with pairs at distance eta, where random starts
/// essentially never land; the certification of every returned set is
/// unchanged. Such solutions carry seeded = true.
SolveReport find_all_solutions(const ABAParams& p, int N, const SolverConfig& cfg);

/// Serial reference driver; must produce byte-identical results.
SolveReport find_all_solutions_serial(const ABAParams& p, int N, SolverConfig cfg);

}  // namespace bethe

#endif
