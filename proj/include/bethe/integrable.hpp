#ifndef BETHE_INTEGRABLE_HPP
#define BETHE_INTEGRABLE_HPP

#include <functional>

#include <Eigen/Dense>

#include "bethe/fock.hpp"

namespace bethe {

/// Physical couplings of the two-site Bose-Hubbard Hamiltonian
///   H = (K/8)(N1-N2)^2 - (dmu/2)(N1-N2) - (ej/2)(a1^+ a2 + a2^+ a1).
/// K > 0 and ej > 0 keep the construction Hermitian.
struct ModelParams {
  double K = 1.0;
  double dmu = 0.0;
  double ej = 1.0;

  void validate() const;
};

/// Integrability parameters: quantum parameter eta and inhomogeneity omega,
/// both real in the Hermitian case treated here.
struct ABAParams {
  double eta = 1.0;
  double omega = 0.0;

  void validate() const;
};

/// The gl(2)-invariant R-matrix
///   [[1, 0,    0,    0],
///    [0, b(u), c(u), 0],
///    [0, c(u), b(u), 0],
///    [0, 0,    0,    1]]
/// with b(u) = u/(u+eta), c(u) = eta/(u+eta).
using RMatrix = Eigen::Matrix4cd;

RMatrix build_r_matrix(Complex u, double eta);

/// Max entry magnitude of R12(u-v)R13(u)R23(v) - R23(v)R13(u)R12(u-v) on the
/// three-fold auxiliary space.
double check_yang_baxter(Complex u, Complex v, double eta);

/// Linear operator on two-mode states.
using StateOp = std::function<TwoModeState(const TwoModeState&)>;

enum class Entry { A, B, C, D };

/// Monodromy entry at spectral parameter u for the realization
/// L1(u+omega) L2(u-omega), assembled from ladder-operator primitives:
///   A(u) = (u^2-w^2) I + eta*u*(N1+N2) + eta^2 N1 N2 - eta*w (N1-N2) + a2^+ a1
///   B(u) = (u+w+eta N1) a2 + eta^-1 a1
///   C(u) = (u-w+eta N2) a1^+ + eta^-1 a2^+
///   D    = a1^+ a2 + eta^-2 I
StateOp monodromy_entry(Entry which, Complex u, const ABAParams& p);

/// Single-mode Lax entry, row/col in {0,1}:
/// [[u I + eta N_site, a_site], [a_site^+, eta^-1 I]].
StateOp lax_entry(int site, Complex u, double eta, int row, int col);

/// Max residual of R12(u-v)L1(u)L2(v) - L2(v)L1(u)R12(u-v), the sixteen
/// auxiliary-space components applied to every basis state whose total
/// occupation leaves headroom 2 below the cutoff.
double check_rll(Complex u, Complex v, const ABAParams& p, int cutoff);

/// Dense operator on the fixed-total-number sector, in the convention of
/// restrict_to_sector (index k is the ket |k>_1 (x) |N-k>_2).
struct SectorMatrix {
  int N = 0;
  Eigen::MatrixXcd mat;
};

/// t(u) = A(u) + D restricted to the N-particle sector.
SectorMatrix build_transfer_matrix(Complex u, const ABAParams& p, int N);

/// The physical Hamiltonian on the N-particle sector.
SectorMatrix build_hamiltonian(const ModelParams& mp, int N);

/// Hamiltonian reconstructed from the transfer matrix,
///   -(ej/2) [ t(0) + (omega^2 - eta^-2) I - (eta^2/4) N^2 I ],
/// used to certify the parameter map.
SectorMatrix hamiltonian_from_transfer(const ABAParams& p, double ej, int N);

/// Coupling map eta = sqrt(K/ej), omega = -dmu/(ej*eta).
ABAParams to_aba(const ModelParams& mp);

/// Inverse of to_aba under the ej = 1 convention: K = eta^2, dmu = -eta*omega.
ModelParams to_physical(const ABAParams& p);

struct Spectrum {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns, matching order
};

/// Full dense Hermitian eigendecomposition of the sector Hamiltonian.
Spectrum exact_spectrum(const ModelParams& mp, int N);

/// Eigendecomposition of an already-built Hermitian sector matrix.
Spectrum diagonalize(const SectorMatrix& m);

}  // namespace bethe

#endif
