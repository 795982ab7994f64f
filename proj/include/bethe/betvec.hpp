#ifndef BETHE_BETVEC_HPP
#define BETHE_BETVEC_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bethe/integrable.hpp"

namespace bethe {

/// Shifted rapidities f_j = v_j - omega.
struct FValues {
  std::vector<Complex> f;
};

/// Expansion coefficients F_0..F_N of the Bethe vector in powers of the
/// raising combination; F_n is the elementary symmetric polynomial
/// e_{N-n}(f_1..f_N), so F_N = 1 and F_0 = prod f_j.
struct FCoeffs {
  std::vector<Complex> F;

  int sector() const { return static_cast<int>(F.size()) - 1; }
};

/// Triangular coefficient table C[n][j] of the expansion of the n-th power
/// of the raising operator eta*a1^+ N2 + eta^-1 a2^+ applied to the vacuum.
/// Entries are real for real eta; out-of-range indices read as zero.
class CoeffTableC {
 public:
  CoeffTableC(int max_n, double eta);

  double operator()(int n, int j) const {
    if (n < 0 || n > max_n_ || j < 0 || j > n) return 0.0;
    return rows_[n][j];
  }
  int max_n() const { return max_n_; }
  double eta() const { return eta_; }

 private:
  std::vector<std::vector<double>> rows_;
  int max_n_ = 0;
  double eta_ = 1.0;
};

FValues f_values(std::span<const Complex> roots, double omega);

/// Division-free Vieta convolution; valid even when some f_j vanish.
FCoeffs compute_F(const FValues& fv);

/// Max residual of [a1^+, eta a1^+ N2 + eta^-1 a2^+] over all basis states
/// with headroom 2 below the cutoff. Identically zero; the vanishing of this
/// commutator is what lets the product form expand commutatively.
double check_a1dag_commutes(double eta, int cutoff);

/// C table filled row by row from
///   C[n+1][j] = eta sqrt(j) (n+1-j) C[n][j-1] + eta^-1 sqrt(n+1-j) C[n][j],
/// seeded with C[0][0] = 1. This is the production path (numerically stable).
CoeffTableC compute_C_recursion(int max_n, double eta);

/// Closed form
///   C[n][j] = eta^(2j-n) sqrt(j!/(n-j)!) sum_l (-1)^(n+l-j) l^n binom(n-j,l)
/// with the 0^0 = 1 convention. Alternating sum loses digits past n ~ 20;
/// kept as a cross-check of the recursion.
double compute_C_closed(int n, int j, double eta);

/// n-fold application of eta a1^+ N2 + eta^-1 a2^+ to the vacuum: the
/// ladder-operator oracle for both C computations.
TwoModeState apply_D_power(int n, double eta);

/// || D^n |0> - eta^(-2n) |0> || with D the monodromy entry a1^+ a2 + eta^-2.
double check_D_power_vacuum(int n, double eta);

/// Bethe vector on the N-particle sector (unnormalized):
///   sum_{n=0..N} sum_{j=0..n} F_n C[n][j] sqrt((N-n+j)!/j!) |N-n+j, n-j>.
Eigen::VectorXcd assemble_state(const FCoeffs& F, const CoeffTableC& C, int N);

/// Independent oracle: applies the monodromy C entry at each rapidity to the
/// vacuum, left to right.
TwoModeState product_form_oracle(std::span<const Complex> roots, const ABAParams& p, int cutoff);

/// Convenience pipeline roots -> f -> F -> assembled sector vector.
Eigen::VectorXcd bethe_state(std::span<const Complex> roots, const ABAParams& p);
Eigen::VectorXcd bethe_state(std::span<const Complex> roots, double omega, const CoeffTableC& C);

/// Inverse of the assembly: the state-to-coefficient map is anti-triangular
/// with nonvanishing anti-diagonal, so any sector vector determines F up to
/// scale (fixed by F_N = 1), and the f_j are then the zeros of
/// sum_k (-1)^k F_{N-k} x^{N-k}. Returns rapidities v_j = f_j + omega in no
/// particular order; accuracy is that of the companion-matrix eigensolve.
std::vector<Complex> roots_from_state(const Eigen::VectorXcd& state, const ABAParams& p);

/// Residual of the commutator-corrected binomial identity
///   (X+Y)^n = sum_j binom(n,j) X^(n-j) Y^j + f([X,Y])
/// with f = [Y,X] for n = 2 and f = [Y,X^2]+[Y^2,X]+[XY,X]+[Y,XY] for n = 3.
double check_binomial_identity(int n, const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y);

/// Residual of (X+Y)^n against the sum over all 2^n ordered words in {X,Y}.
double permutation_expansion(int n, const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y);

/// Word-enumerated counterpart of apply_D_power: sums every length-n word in
/// {eta a1^+ N2, eta^-1 a2^+} applied to the vacuum.
TwoModeState dop_word_expansion(int n, double eta);

}  // namespace bethe

#endif
