#include "bethe/correlators.hpp"

#include <cmath>

namespace bethe {

namespace {

constexpr double kRelFloor = 1e-300;

// (N-n+j)! / sqrt(j! (r-n+j)!). Linear space keeps small-N results
// bit-reproducible; log space takes over past N = 20 for overflow safety.
double coupling_weight(int N, int r, int n, int j) {
  const int top = N - n + j;
  const int jb = r - n + j;
  if (N <= 20) {
    double fact_top = 1.0, fact_j = 1.0, fact_jb = 1.0;
    for (int m = 2; m <= top; ++m) fact_top *= m;
    for (int m = 2; m <= j; ++m) fact_j *= m;
    for (int m = 2; m <= jb; ++m) fact_jb *= m;
    return fact_top / std::sqrt(fact_j * fact_jb);
  }
  return std::exp(std::lgamma(top + 1.0) -
                  0.5 * (std::lgamma(j + 1.0) + std::lgamma(jb + 1.0)));
}

Complex coefficient_sum(const FCoeffs& bra, const FCoeffs& ket, const CoeffTableC& C, int N,
                        bool imbalance) {
  if (bra.sector() != N || ket.sector() != N) {
    throw std::invalid_argument("coefficient sets must match the sector");
  }
  if (C.max_n() < N) throw std::invalid_argument("C table too small for sector");

  double fact_n = 1.0;
  for (int m = 2; m <= N; ++m) fact_n *= m;
  Complex total = fact_n * std::conj(bra.F[0]) * ket.F[0];

  for (int r = 1; r <= N; ++r) {
    for (int n = 1; n <= N; ++n) {
      for (int j = 0; j <= n; ++j) {
        const int jb = r - n + j;
        if (jb < 0 || jb > r) continue;
        const double cc = C(r, jb) * C(n, j);
        if (cc == 0.0) continue;
        const double w = imbalance ? 1.0 - 2.0 * (n - j) / static_cast<double>(N) : 1.0;
        total += std::conj(bra.F[r]) * ket.F[n] * cc * w * coupling_weight(N, r, n, j);
      }
    }
  }
  return total;
}

}  // namespace

Complex scalar_product_formula(const FCoeffs& bra, const FCoeffs& ket, const CoeffTableC& C,
                               int N) {
  return coefficient_sum(bra, ket, C, N, false);
}

double norm_formula(const FCoeffs& F, const CoeffTableC& C, int N) {
  const Complex value = coefficient_sum(F, F, C, N, false);
  if (std::abs(value.imag()) > 1e-10 * std::abs(value)) {
    throw std::runtime_error("norm came out non-real; inconsistent coefficient inputs");
  }
  return value.real();
}

Complex imbalance_form_factor_formula(const FCoeffs& bra, const FCoeffs& ket,
                                      const CoeffTableC& C, int N) {
  if (N < 1) throw std::invalid_argument("imbalance form factor needs N >= 1");
  return coefficient_sum(bra, ket, C, N, true);
}

Complex direct_overlap(const TwoModeState& bra, const TwoModeState& ket, Weight w, int N) {
  if (w == Weight::None) return inner_product(bra, ket);
  if (N < 1) throw std::invalid_argument("imbalance weight needs N >= 1");
  const TwoModeState weighted =
      Complex(1.0 / N) * (apply_number(1, ket) - apply_number(2, ket));
  return inner_product(bra, weighted);
}

OverlapReport compare(std::span<const Complex> bra_roots, std::span<const Complex> ket_roots,
                      const ABAParams& p, Weight w, bool bra_on_shell, bool ket_on_shell) {
  if (bra_roots.size() != ket_roots.size()) {
    throw std::invalid_argument("bra and ket root sets must share the sector");
  }
  const int N = static_cast<int>(bra_roots.size());

  const CoeffTableC table(N, p.eta);
  const FCoeffs fb = compute_F(f_values(bra_roots, p.omega));
  const FCoeffs fk = compute_F(f_values(ket_roots, p.omega));

  OverlapReport report;
  report.N = N;
  report.bra_on_shell = bra_on_shell;
  report.ket_on_shell = ket_on_shell;
  report.formula_value = (w == Weight::Imbalance)
                             ? imbalance_form_factor_formula(fb, fk, table, N)
                             : scalar_product_formula(fb, fk, table, N);

  const TwoModeState bra_state = product_form_oracle(bra_roots, p, N);
  const TwoModeState ket_state = product_form_oracle(ket_roots, p, N);
  report.oracle_value = direct_overlap(bra_state, ket_state, w, N);

  report.rel_error = std::abs(report.formula_value - report.oracle_value) /
                     std::max(std::abs(report.oracle_value), kRelFloor);
  return report;
}

}  // namespace bethe
