#ifndef BETHE_CORRELATORS_HPP
#define BETHE_CORRELATORS_HPP

#include <span>

#include "bethe/betvec.hpp"

namespace bethe {

/// Coefficient-sum form of the overlap of two Bethe vectors sharing one
/// C table (same sector, same eta):
///   <bra|ket> = N! conj(Fb_0) Fk_0
///     + sum_{r,n>=1} sum_j conj(Fb_r) Fk_n C[r][r-n+j] C[n][j]
///                    (N-n+j)! / sqrt(j! (r-n+j)!).
/// Out-of-range C indices contribute zero.
Complex scalar_product_formula(const FCoeffs& bra, const FCoeffs& ket, const CoeffTableC& C,
                               int N);

/// Scalar product with bra = ket; throws if the imaginary part exceeds
/// 1e-10 of the magnitude (inconsistent inputs), else returns the real part.
double norm_formula(const FCoeffs& F, const CoeffTableC& C, int N);

/// Same double sum with the diagonal weight 1 - 2(n-j)/N of the imbalance
/// current (N1-N2)/N; the leading N! term carries weight 1.
Complex imbalance_form_factor_formula(const FCoeffs& bra, const FCoeffs& ket,
                                      const CoeffTableC& C, int N);

enum class Weight { None, Imbalance };

/// Ladder-operator oracle: <bra|ket> or <bra|(N1-N2)/N|ket>.
Complex direct_overlap(const TwoModeState& bra, const TwoModeState& ket, Weight w, int N = 0);

struct OverlapReport {
  Complex formula_value;
  Complex oracle_value;
  double rel_error = 0.0;
  int N = 0;
  bool bra_on_shell = false;
  bool ket_on_shell = false;
};

/// Evaluates formula and oracle for the states built from two root sets.
/// The oracle path goes through the product form and never touches the
/// coefficient tables.
OverlapReport compare(std::span<const Complex> bra_roots, std::span<const Complex> ket_roots,
                      const ABAParams& p, Weight w, bool bra_on_shell = false,
                      bool ket_on_shell = false);

}  // namespace bethe

#endif
