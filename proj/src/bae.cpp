#include "bethe/bae.hpp"

#include <algorithm>
#include <cmath>

#include "bethe/rng.hpp"

namespace bethe {

namespace {

constexpr double kCoincideTol = 1e-8;  // Jacobian numerically singular below this
constexpr double kDedupTol = 1e-7;
constexpr double kSortTol = 1e-9;
constexpr double kNormFloor = 1e-250;

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Canonical order with a real-part tolerance: two converged copies of one
// root set may disagree in the last bits of equal real parts (conjugate
// pairs), and exact lexicographic ordering would then break the
// unordered-set dedup. Sorting exactly and then reordering each run of
// near-equal real parts by imaginary part avoids handing std::sort a
// tolerance comparator, which is not a strict weak ordering.
void canonical_sort(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), lex_less);
  std::size_t run = 0;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    if (i == v.size() || v[i].real() - v[i - 1].real() > kSortTol) {
      std::sort(v.begin() + run, v.begin() + i, [](const Complex& a, const Complex& b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
      });
      run = i;
    }
  }
}

bool same_root_set(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) >= kDedupTol) return false;
  }
  return true;
}

struct ResidualParts {
  std::vector<Complex> lhs;  // eta^2 (v_i^2 - w^2) * prod(v_i - v_j + eta)
  std::vector<Complex> rhs;  // prod(v_i - v_j - eta)

  double scale(std::size_t i) const {
    return std::max({1.0, std::abs(lhs[i]), std::abs(rhs[i])});
  }

  double scaled_max() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / scale(i));
    }
    return worst;
  }

  // Weighted 2-norm merit for the line search. Row magnitudes span many
  // orders, so the raw 2-norm is all evaluation noise of the largest row;
  // weights are frozen over one iteration, which keeps the Newton direction
  // a descent direction.
  double sum_squares(std::span<const double> weights) const {
    double total = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      total += std::norm((lhs[i] - rhs[i]) * weights[i]);
    }
    return total;
  }
};

ResidualParts residual_parts(std::span<const Complex> v, const ABAParams& p) {
  const int n = static_cast<int>(v.size());
  const double eta = p.eta, w = p.omega;
  ResidualParts parts;
  parts.lhs.resize(n);
  parts.rhs.resize(n);
  for (int i = 0; i < n; ++i) {
    Complex plus{1.0, 0.0}, minus{1.0, 0.0};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      plus *= v[i] - v[j] + eta;
      minus *= v[i] - v[j] - eta;
    }
    parts.lhs[i] = eta * eta * (v[i] * v[i] - w * w) * plus;
    parts.rhs[i] = minus;
  }
  return parts;
}

bool passes_separation(std::span<const Complex> v, double eta) {
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex d = v[i] - v[j];
      if (i < j && std::abs(d) <= kCoincideTol) return false;
      if (std::abs(d - eta) <= kCoincideTol || std::abs(d + eta) <= kCoincideTol) return false;
    }
  }
  return true;
}

bool conjugation_closed(const std::vector<Complex>& sorted) {
  std::vector<Complex> conj(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) conj[i] = std::conj(sorted[i]);
  canonical_sort(conj);
  return same_root_set(sorted, conj);
}

}  // namespace

std::vector<Complex> bae_residual(std::span<const Complex> roots, const ABAParams& p) {
  p.validate();
  const ResidualParts parts = residual_parts(roots, p);
  std::vector<Complex> g(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) g[i] = parts.lhs[i] - parts.rhs[i];
  return g;
}

double bae_residual_scaled(std::span<const Complex> roots, const ABAParams& p) {
  p.validate();
  return residual_parts(roots, p).scaled_max();
}

std::optional<BetheRoots> solve_newton(std::vector<Complex> v, const ABAParams& p, double tol,
                                       int max_iter) {
  p.validate();
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  const int n = static_cast<int>(v.size());
  if (n == 0) return BetheRoots{{}, 0.0, 0.0, p};

  const double eta = p.eta, w = p.omega;
  Eigen::VectorXcd g(n);
  Eigen::MatrixXcd jac(n, n);

  ResidualParts parts = residual_parts(v, p);
  std::vector<double> weights(n);
  bool stalled_at_floor = false;
  for (int iter = 0; iter < max_iter && parts.scaled_max() >= tol; ++iter) {
    for (int i = 0; i < n; ++i) weights[i] = 1.0 / parts.scale(i);
    double merit = parts.sum_squares(weights);
    // Leave-one-out and leave-two-out products, division-free.
    for (int i = 0; i < n; ++i) {
      Complex plus{1.0, 0.0}, minus{1.0, 0.0};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        plus *= v[i] - v[j] + eta;
        minus *= v[i] - v[j] - eta;
      }
      const Complex a = eta * eta * (v[i] * v[i] - w * w);
      g[i] = a * plus - minus;

      Complex dplus{0.0, 0.0}, dminus{0.0, 0.0};
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        Complex plus_k{1.0, 0.0}, minus_k{1.0, 0.0};
        for (int j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          plus_k *= v[i] - v[j] + eta;
          minus_k *= v[i] - v[j] - eta;
        }
        dplus += plus_k;
        dminus += minus_k;
        jac(i, k) = -a * plus_k + minus_k;
      }
      jac(i, i) = eta * eta * 2.0 * v[i] * plus + a * dplus - dminus;
    }

    // Backtracking on the squared residual; near-string configurations have
    // tiny basins and a full step routinely overshoots them.
    const Eigen::VectorXcd step = jac.partialPivLu().solve(g);
    std::vector<Complex> trial(n);
    double lambda = 1.0;
    bool accepted = false;
    for (int back = 0; back < 12; ++back, lambda *= 0.5) {
      bool sane = true;
      for (int i = 0; i < n; ++i) {
        trial[i] = v[i] - lambda * step[i];
        if (!std::isfinite(trial[i].real()) || !std::isfinite(trial[i].imag())) sane = false;
      }
      if (!sane) continue;
      ResidualParts trial_parts = residual_parts(trial, p);
      const double trial_merit = trial_parts.sum_squares(weights);
      if (trial_merit < merit) {
        v.swap(trial);
        parts = std::move(trial_parts);
        merit = trial_merit;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Line search stalled. Near-string configurations have residual
      // floors above any fixed tolerance: the nearest representable
      // iterate evaluates to g ~ eps * |J| |v|. Accept the iterate only
      // if every row sits at that working-precision floor; stalls at
      // genuine non-roots have residuals far above it.
      constexpr double kFloorFactor = 8.0;
      constexpr double kEps = 2.220446049250313e-16;
      for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int k = 0; k < n; ++k) {
          row += std::abs(jac(i, k)) * std::max(std::abs(v[k]), 1.0);
        }
        if (std::abs(g[i]) > kFloorFactor * kEps * row) return std::nullopt;
      }
      stalled_at_floor = true;
      break;
    }
  }

  if (!stalled_at_floor && parts.scaled_max() >= tol) return std::nullopt;
  if (!passes_separation(v, eta)) return std::nullopt;

  canonical_sort(v);
  BetheRoots out{std::move(v), 0.0, 0.0, p};
  out.residual = bae_residual_scaled(out.v, p);
  for (const Complex& gi : bae_residual(out.v, p)) {
    out.residual_raw = std::max(out.residual_raw, std::abs(gi));
  }
  return out;
}

double start_radius(const ABAParams& p, int N, double scale) {
  return scale * (std::abs(p.omega) + 1.0 / std::abs(p.eta) + std::abs(p.eta) * N);
}

SolveReport find_all_solutions(const ABAParams& p, int N, const SolverConfig& cfg) {
  p.validate();
  if (N < 0) throw std::invalid_argument("sector label must be nonnegative");
  if (cfg.attempts < 1) throw std::invalid_argument("attempts must be at least 1");

  const SectorMatrix h = hamiltonian_from_transfer(p, cfg.ej, N);

  SolveReport report;
  report.attempts = cfg.attempts;

  if (N == 0) {
    TaggedSolution vac;
    vac.roots = BetheRoots{{}, 0.0, 0.0, p};
    vac.state = Eigen::VectorXcd::Ones(1);
    vac.norm2 = 1.0;
    vac.energy = h.mat(0, 0).real();
    vac.eigvec_residual = 0.0;
    report.solutions.push_back(std::move(vac));
    report.converged = cfg.attempts;
    report.complete = true;
    return report;
  }

  // Independent attempts; slot per attempt keeps the outcome identical for
  // any schedule.
  const double radius = start_radius(p, N, cfg.radius_scale);
  std::vector<std::optional<std::vector<Complex>>> hits(cfg.attempts);
  par::for_each_index(
      static_cast<std::size_t>(cfg.attempts),
      [&](std::size_t i) {
        Rng rng = Rng::fork(cfg.seed, i);
        std::vector<Complex> start(N);
        for (Complex& z : start) z = rng.in_disk(radius);
        if (auto roots = solve_newton(std::move(start), p, cfg.tol, cfg.max_iter)) {
          hits[i] = std::move(roots->v);
        }
      },
      cfg.exec);

  // Dedup in attempt order (unordered-set comparison after canonical sort).
  std::vector<BetheRoots> unique;
  for (auto& hit : hits) {
    if (!hit) continue;
    ++report.converged;
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [&](const BetheRoots& u) { return same_root_set(u.v, *hit); });
    if (seen) continue;
    BetheRoots r{std::move(*hit), 0.0, 0.0, p};
    r.residual = bae_residual_scaled(r.v, p);
    for (const Complex& gi : bae_residual(r.v, p)) {
      r.residual_raw = std::max(r.residual_raw, std::abs(gi));
    }
    unique.push_back(std::move(r));
  }

  // Tag each set with the eigenstate its Bethe vector reproduces; fixed
  // points producing a numerically zero state are discarded as unphysical.
  const CoeffTableC table(N, p.eta);
  const auto tag = [&](BetheRoots&& roots, bool seeded) -> std::optional<TaggedSolution> {
    TaggedSolution sol;
    sol.state = bethe_state(roots.v, p.omega, table);
    sol.norm2 = sol.state.squaredNorm();
    if (!(sol.norm2 > kNormFloor)) return std::nullopt;
    const Eigen::VectorXcd hpsi = h.mat * sol.state;
    sol.energy = (sol.state.dot(hpsi) / sol.norm2).real();
    sol.eigvec_residual = (hpsi - sol.energy * sol.state).norm() / std::sqrt(sol.norm2);
    sol.conjugation_closed = conjugation_closed(roots.v);
    sol.seeded = seeded;
    sol.roots = std::move(roots);
    return sol;
  };

  for (BetheRoots& roots : unique) {
    if (auto sol = tag(std::move(roots), false)) report.solutions.push_back(std::move(*sol));
  }

  // Completion pass for sectors where random starts fell short: invert the
  // unmatched exact eigenvectors into candidate rapidities, polish with the
  // same Newton iteration, and accept only what passes the same checks.
  if (static_cast<int>(report.solutions.size()) < N + 1) {
    const Spectrum spectrum = diagonalize(h);
    for (int i = 0; i <= N; ++i) {
      const double value = spectrum.values(i);
      const bool matched =
          std::any_of(report.solutions.begin(), report.solutions.end(),
                      [&](const TaggedSolution& s) {
                        return std::abs(s.energy - value) < 1e-6 * std::max(1.0, std::abs(value));
                      });
      if (matched) continue;
      std::vector<Complex> guess;
      try {
        guess = roots_from_state(spectrum.vectors.col(i), p);
      } catch (const std::exception&) {
        continue;
      }
      auto polished = solve_newton(std::move(guess), p, cfg.tol, cfg.max_iter);
      if (!polished) continue;
      const bool seen =
          std::any_of(report.solutions.begin(), report.solutions.end(),
                      [&](const TaggedSolution& s) { return same_root_set(s.roots.v, polished->v); });
      if (seen) continue;
      if (auto sol = tag(std::move(*polished), true)) {
        ++report.seeded_found;
        report.solutions.push_back(std::move(*sol));
      }
    }
  }

  std::sort(report.solutions.begin(), report.solutions.end(),
            [](const TaggedSolution& a, const TaggedSolution& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return std::lexicographical_compare(a.roots.v.begin(), a.roots.v.end(),
                                                  b.roots.v.begin(), b.roots.v.end(), lex_less);
            });
  report.complete = static_cast<int>(report.solutions.size()) >= N + 1;
  return report;
}

SolveReport find_all_solutions_serial(const ABAParams& p, int N, SolverConfig cfg) {
  cfg.exec = par::Exec::Serial;
  return find_all_solutions(p, N, cfg);
}

}  // namespace bethe
