#include "bethe/integrable.hpp"

#include <array>
#include <cmath>
#include <string>

namespace bethe {

namespace {

constexpr double kSingularTol = 1e-14;

// Embeds a 4x4 two-space matrix into the 8-dimensional product of three
// two-dimensional spaces, acting on spaces a and b (0-based, a < b assumed
// distinct). Basis index i = 4*i0 + 2*i1 + i2.
Eigen::Matrix<Complex, 8, 8> embed_pair(const RMatrix& m, int a, int b) {
  Eigen::Matrix<Complex, 8, 8> out = Eigen::Matrix<Complex, 8, 8>::Zero();
  const int c = 3 - a - b;  // spectator space
  std::array<int, 3> row{}, col{};
  for (int i = 0; i < 8; ++i) {
    row = {(i >> 2) & 1, (i >> 1) & 1, i & 1};
    for (int j = 0; j < 8; ++j) {
      col = {(j >> 2) & 1, (j >> 1) & 1, j & 1};
      if (row[c] != col[c]) continue;
      out(i, j) = m(2 * row[a] + row[b], 2 * col[a] + col[b]);
    }
  }
  return out;
}

// Matrix of a number-conserving operator on the fixed-N sector. Column k is
// the image of |k, N-k>.
Eigen::MatrixXcd sector_matrix_of(const StateOp& op, int N) {
  Eigen::MatrixXcd m(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    m.col(k) = restrict_to_sector(op(basis_state(k, N - k, N)), N);
  }
  return m;
}

}  // namespace

void ModelParams::validate() const {
  if (!(K > 0.0)) throw std::domain_error("interaction strength K must be positive");
  if (!(ej > 0.0)) throw std::domain_error("tunnelling amplitude ej must be positive");
  if (!std::isfinite(K) || !std::isfinite(dmu) || !std::isfinite(ej)) {
    throw std::domain_error("couplings must be finite");
  }
}

void ABAParams::validate() const {
  if (eta == 0.0 || !std::isfinite(eta) || !std::isfinite(omega)) {
    throw std::domain_error("eta must be nonzero and both parameters finite");
  }
}

RMatrix build_r_matrix(Complex u, double eta) {
  const Complex denom = u + eta;
  if (std::abs(denom) < kSingularTol) {
    throw std::domain_error("R-matrix singular at u + eta = 0");
  }
  const Complex b = u / denom;
  const Complex c = eta / denom;
  RMatrix r = RMatrix::Zero();
  r(0, 0) = 1.0;
  r(1, 1) = b;
  r(1, 2) = c;
  r(2, 1) = c;
  r(2, 2) = b;
  r(3, 3) = 1.0;
  return r;
}

double check_yang_baxter(Complex u, Complex v, double eta) {
  const auto r12 = embed_pair(build_r_matrix(u - v, eta), 0, 1);
  const auto r13 = embed_pair(build_r_matrix(u, eta), 0, 2);
  const auto r23 = embed_pair(build_r_matrix(v, eta), 1, 2);
  return (r12 * r13 * r23 - r23 * r13 * r12).cwiseAbs().maxCoeff();
}

StateOp monodromy_entry(Entry which, Complex u, const ABAParams& p) {
  p.validate();
  const double eta = p.eta;
  const double omega = p.omega;
  switch (which) {
    case Entry::A:
      return [u, eta, omega](const TwoModeState& s) {
        const TwoModeState n1 = apply_number(1, s);
        const TwoModeState n2 = apply_number(2, s);
        TwoModeState out = (u * u - omega * omega) * s;
        out += (eta * u) * (n1 + n2);
        out += Complex(eta * eta) * apply_number(1, n2);
        out += Complex(-eta * omega) * (n1 - n2);
        out += apply_create(2, apply_annihilate(1, s));
        return out;
      };
    case Entry::B:
      return [u, eta, omega](const TwoModeState& s) {
        const TwoModeState a2s = apply_annihilate(2, s);
        TwoModeState out = (u + omega) * a2s;
        out += Complex(eta) * apply_number(1, a2s);
        out += Complex(1.0 / eta) * apply_annihilate(1, s);
        return out;
      };
    case Entry::C:
      return [u, eta, omega](const TwoModeState& s) {
        const TwoModeState raised = apply_create(1, s);
        TwoModeState out = (u - omega) * raised;
        out += Complex(eta) * apply_number(2, raised);
        out += Complex(1.0 / eta) * apply_create(2, s);
        return out;
      };
    case Entry::D:
      return [eta](const TwoModeState& s) {
        TwoModeState out = apply_create(1, apply_annihilate(2, s));
        out += Complex(1.0 / (eta * eta)) * s;
        return out;
      };
  }
  throw std::logic_error("unreachable");
}

StateOp lax_entry(int site, Complex u, double eta, int row, int col) {
  if (row < 0 || row > 1 || col < 0 || col > 1) {
    throw std::invalid_argument("Lax entry indices must be 0 or 1");
  }
  if (row == 0 && col == 0) {
    return [site, u, eta](const TwoModeState& s) {
      TwoModeState out = u * s;
      out += Complex(eta) * apply_number(site, s);
      return out;
    };
  }
  if (row == 0 && col == 1) {
    return [site](const TwoModeState& s) { return apply_annihilate(site, s); };
  }
  if (row == 1 && col == 0) {
    return [site](const TwoModeState& s) { return apply_create(site, s); };
  }
  return [eta](const TwoModeState& s) { return Complex(1.0 / eta) * s; };
}

double check_rll(Complex u, Complex v, const ABAParams& p, int cutoff) {
  p.validate();
  if (cutoff < 2) throw std::invalid_argument("cutoff must be at least 2");
  const RMatrix r = build_r_matrix(u - v, p.eta);

  // Entries of the single-mode Lax operators; mode 1 carries the check.
  std::array<StateOp, 4> lu, lv;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      lu[2 * i + j] = lax_entry(1, u, p.eta, i, j);
      lv[2 * i + j] = lax_entry(1, v, p.eta, i, j);
    }
  }

  double worst = 0.0;
  for (int n1 = 0; n1 + 2 <= cutoff; ++n1) {
    for (int n2 = 0; n1 + n2 + 2 <= cutoff; ++n2) {
      const TwoModeState psi = basis_state(n1, n2, cutoff);
      // Auxiliary pair indices (a,b) row, (c,d) column of the 4x4 relation.
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) {
              TwoModeState lhs(cutoff), rhs(cutoff);
              for (int e = 0; e < 2; ++e)
                for (int f = 0; f < 2; ++f) {
                  const Complex rl = r(2 * a + b, 2 * e + f);
                  if (rl != Complex{0.0, 0.0}) {
                    lhs += rl * lu[2 * e + c](lv[2 * f + d](psi));
                  }
                  const Complex rr = r(2 * e + f, 2 * c + d);
                  if (rr != Complex{0.0, 0.0}) {
                    rhs += rr * lv[2 * b + f](lu[2 * a + e](psi));
                  }
                }
              worst = std::max(worst, norm(lhs - rhs));
            }
    }
  }
  return worst;
}

SectorMatrix build_transfer_matrix(Complex u, const ABAParams& p, int N) {
  p.validate();
  if (N < 0) throw std::invalid_argument("sector label must be nonnegative");
  const StateOp a = monodromy_entry(Entry::A, u, p);
  const StateOp d = monodromy_entry(Entry::D, u, p);
  const StateOp t = [&a, &d](const TwoModeState& s) { return a(s) + d(s); };
  return {N, sector_matrix_of(t, N)};
}

SectorMatrix build_hamiltonian(const ModelParams& mp, int N) {
  mp.validate();
  if (N < 0) throw std::invalid_argument("sector label must be nonnegative");
  const double K = mp.K, dmu = mp.dmu, ej = mp.ej;
  const StateOp h = [K, dmu, ej](const TwoModeState& s) {
    const TwoModeState imbalance = apply_number(1, s) - apply_number(2, s);
    const TwoModeState imbalance2 =
        apply_number(1, imbalance) - apply_number(2, imbalance);
    TwoModeState out = Complex(K / 8.0) * imbalance2;
    out += Complex(-dmu / 2.0) * imbalance;
    out += Complex(-ej / 2.0) * (apply_create(1, apply_annihilate(2, s)) +
                                 apply_create(2, apply_annihilate(1, s)));
    return out;
  };
  return {N, sector_matrix_of(h, N)};
}

SectorMatrix hamiltonian_from_transfer(const ABAParams& p, double ej, int N) {
  SectorMatrix t0 = build_transfer_matrix(Complex{0.0, 0.0}, p, N);
  const double shift = p.omega * p.omega - 1.0 / (p.eta * p.eta) -
                       p.eta * p.eta * static_cast<double>(N) * static_cast<double>(N) / 4.0;
  t0.mat.diagonal().array() += shift;
  t0.mat *= Complex(-ej / 2.0);
  return t0;
}

ABAParams to_aba(const ModelParams& mp) {
  mp.validate();
  const double eta = std::sqrt(mp.K / mp.ej);
  return {eta, -mp.dmu / (mp.ej * eta)};
}

ModelParams to_physical(const ABAParams& p) {
  p.validate();
  return {p.eta * p.eta, -p.eta * p.omega, 1.0};
}

Spectrum exact_spectrum(const ModelParams& mp, int N) {
  return diagonalize(build_hamiltonian(mp, N));
}

Spectrum diagonalize(const SectorMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.mat);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed on sector N=" + std::to_string(m.N));
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace bethe
