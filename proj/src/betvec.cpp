#include "bethe/betvec.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace bethe {

namespace {

// Raising combination eta a1^+ N2 + eta^-1 a2^+ applied once.
TwoModeState apply_dop(const TwoModeState& s, double eta) {
  TwoModeState out = Complex(eta) * apply_create(1, apply_number(2, s));
  out += Complex(1.0 / eta) * apply_create(2, s);
  return out;
}

double pairwise_sum(std::span<const double> terms) {
  const std::size_t n = terms.size();
  if (n == 0) return 0.0;
  if (n == 1) return terms[0];
  if (n == 2) return terms[0] + terms[1];
  const std::size_t half = n / 2;
  return pairwise_sum(terms.subspan(0, half)) + pairwise_sum(terms.subspan(half));
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b *= static_cast<double>(n - k + i) / static_cast<double>(i);
  return b;
}

// sqrt of the rising product (j+1)(j+2)...(top) = top!/j!, for top >= j.
double sqrt_factorial_ratio(int top, int j) {
  double prod = 1.0;
  for (int m = j + 1; m <= top; ++m) prod *= static_cast<double>(m);
  return std::sqrt(prod);
}

}  // namespace

CoeffTableC::CoeffTableC(int max_n, double eta) : max_n_(max_n), eta_(eta) {
  if (max_n < 0) throw std::invalid_argument("table order must be nonnegative");
  if (eta == 0.0) throw std::domain_error("eta must be nonzero");
  rows_.resize(max_n + 1);
  rows_[0] = {1.0};
  for (int n = 0; n < max_n; ++n) {
    rows_[n + 1].assign(n + 2, 0.0);
    for (int j = 0; j <= n + 1; ++j) {
      const double lower = (j >= 1 && j - 1 <= n) ? rows_[n][j - 1] : 0.0;
      const double same = (j <= n) ? rows_[n][j] : 0.0;
      rows_[n + 1][j] = eta * std::sqrt(static_cast<double>(j)) * (n + 1 - j) * lower +
                        (1.0 / eta) * std::sqrt(static_cast<double>(n + 1 - j)) * same;
    }
  }
}

FValues f_values(std::span<const Complex> roots, double omega) {
  FValues fv;
  fv.f.reserve(roots.size());
  for (const Complex& v : roots) fv.f.push_back(v - omega);
  return fv;
}

FCoeffs compute_F(const FValues& fv) {
  const int N = static_cast<int>(fv.f.size());
  // Elementary symmetric polynomials by one-root-at-a-time convolution.
  std::vector<Complex> e(N + 1, Complex{0.0, 0.0});
  e[0] = 1.0;
  int filled = 0;
  for (const Complex& f : fv.f) {
    ++filled;
    for (int k = filled; k >= 1; --k) e[k] += f * e[k - 1];
  }
  FCoeffs out;
  out.F.resize(N + 1);
  for (int n = 0; n <= N; ++n) out.F[n] = e[N - n];
  return out;
}

double check_a1dag_commutes(double eta, int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("cutoff must be at least 2");
  double worst = 0.0;
  for (int n1 = 0; n1 + 2 <= cutoff; ++n1) {
    for (int n2 = 0; n1 + n2 + 2 <= cutoff; ++n2) {
      const TwoModeState psi = basis_state(n1, n2, cutoff);
      const TwoModeState forward = apply_dop(apply_create(1, psi), eta);
      const TwoModeState backward = apply_create(1, apply_dop(psi, eta));
      worst = std::max(worst, norm(forward - backward));
    }
  }
  return worst;
}

CoeffTableC compute_C_recursion(int max_n, double eta) { return {max_n, eta}; }

double compute_C_closed(int n, int j, double eta) {
  if (j < 0 || j > n) return 0.0;
  if (eta == 0.0) throw std::domain_error("eta must be nonzero");
  const int m = n - j;
  std::vector<double> terms(m + 1);
  for (int l = 0; l <= m; ++l) {
    // l^n with the 0^0 = 1 convention.
    double power = 1.0;
    for (int k = 0; k < n; ++k) power *= static_cast<double>(l);
    const double sign = ((n + l - j) % 2 == 0) ? 1.0 : -1.0;
    terms[l] = sign * power * binom(m, l);
  }
  const double sum = pairwise_sum(terms);
  const double fact_ratio = sqrt_factorial_ratio(j, 0) / sqrt_factorial_ratio(m, 0);
  return std::pow(eta, 2 * j - n) * fact_ratio * sum;
}

TwoModeState apply_D_power(int n, double eta) {
  if (n < 0) throw std::invalid_argument("power must be nonnegative");
  if (eta == 0.0) throw std::domain_error("eta must be nonzero");
  TwoModeState s = vacuum(std::max(n, 1));
  for (int k = 0; k < n; ++k) s = apply_dop(s, eta);
  return s;
}

double check_D_power_vacuum(int n, double eta) {
  if (n < 0) throw std::invalid_argument("power must be nonnegative");
  const StateOp d = monodromy_entry(Entry::D, Complex{0.0, 0.0}, ABAParams{eta, 0.0});
  TwoModeState s = vacuum(std::max(n, 1));
  for (int k = 0; k < n; ++k) s = d(s);
  const double expected = std::pow(eta, -2.0 * n);
  return norm(s - expected * vacuum(s.cutoff()));
}

Eigen::VectorXcd assemble_state(const FCoeffs& F, const CoeffTableC& C, int N) {
  if (F.sector() != N) throw std::invalid_argument("coefficient set length must be N+1");
  if (C.max_n() < N) throw std::invalid_argument("C table too small for sector");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int j = 0; j <= n; ++j) {
      const double c = C(n, j);
      if (c == 0.0) continue;
      // (a1^+)^(N-n) lifts |j, n-j> to sqrt((N-n+j)!/j!) |N-n+j, n-j>.
      v[N - n + j] += F.F[n] * c * sqrt_factorial_ratio(N - n + j, j);
    }
  }
  return v;
}

TwoModeState product_form_oracle(std::span<const Complex> roots, const ABAParams& p, int cutoff) {
  p.validate();
  if (cutoff < static_cast<int>(roots.size())) {
    throw std::invalid_argument("cutoff below root count");
  }
  TwoModeState s = vacuum(cutoff);
  for (const Complex& v : roots) s = monodromy_entry(Entry::C, v, p)(s);
  return s;
}

Eigen::VectorXcd bethe_state(std::span<const Complex> roots, const ABAParams& p) {
  const CoeffTableC table(static_cast<int>(roots.size()), p.eta);
  return bethe_state(roots, p.omega, table);
}

Eigen::VectorXcd bethe_state(std::span<const Complex> roots, double omega, const CoeffTableC& C) {
  const int N = static_cast<int>(roots.size());
  return assemble_state(compute_F(f_values(roots, omega)), C, N);
}

std::vector<Complex> roots_from_state(const Eigen::VectorXcd& state, const ABAParams& p) {
  p.validate();
  const int N = static_cast<int>(state.size()) - 1;
  if (N < 0) throw std::invalid_argument("state must have at least one component");
  if (N == 0) return {};

  const CoeffTableC table(N, p.eta);
  Eigen::MatrixXcd lift = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int j = 0; j <= n; ++j) {
      const double c = table(n, j);
      if (c == 0.0) continue;
      lift(N - n + j, n) += c * sqrt_factorial_ratio(N - n + j, j);
    }
  }
  Eigen::VectorXcd coeffs = lift.partialPivLu().solve(state);
  if (coeffs(N) == Complex{0.0, 0.0}) {
    throw std::invalid_argument("state is not a Bethe vector: top coefficient vanishes");
  }
  coeffs /= coeffs(N);

  // Companion matrix of the monic polynomial with coefficient of x^m equal
  // to (-1)^(N-m) F_m.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 1; i < N; ++i) companion(i, i - 1) = 1.0;
  for (int m = 0; m < N; ++m) {
    const double sign = ((N - m) % 2 == 0) ? 1.0 : -1.0;
    companion(m, N - 1) = -sign * coeffs(m);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("companion eigensolve failed");
  }
  std::vector<Complex> roots(N);
  for (int i = 0; i < N; ++i) roots[i] = solver.eigenvalues()(i) + p.omega;
  return roots;
}

double check_binomial_identity(int n, const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
  if (n != 2 && n != 3) throw std::invalid_argument("commutator correction known for n = 2, 3");
  if (X.rows() != X.cols() || Y.rows() != Y.cols() || X.rows() != Y.rows()) {
    throw std::invalid_argument("operands must be square matrices of equal dimension");
  }
  const Eigen::MatrixXcd sum = X + Y;
  Eigen::MatrixXcd lhs = sum * sum;
  if (n == 3) lhs = lhs * sum;

  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(X.rows(), X.cols());
  for (int j = 0; j <= n; ++j) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(X.rows(), X.cols());
    for (int k = 0; k < n - j; ++k) term = term * X;
    for (int k = 0; k < j; ++k) term = term * Y;
    rhs += binom(n, j) * term;
  }
  auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) -> Eigen::MatrixXcd {
    return a * b - b * a;
  };
  if (n == 2) {
    rhs += comm(Y, X);
  } else {
    rhs += comm(Y, Eigen::MatrixXcd(X * X));
    rhs += comm(Eigen::MatrixXcd(Y * Y), X);
    rhs += comm(Eigen::MatrixXcd(X * Y), X);
    rhs += comm(Y, Eigen::MatrixXcd(X * Y));
  }
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double permutation_expansion(int n, const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
  if (n < 1 || n > 8) throw std::invalid_argument("word enumeration supported for 1 <= n <= 8");
  if (X.rows() != X.cols() || Y.rows() != Y.cols() || X.rows() != Y.rows()) {
    throw std::invalid_argument("operands must be square matrices of equal dimension");
  }
  const auto dim = X.rows();
  Eigen::MatrixXcd direct = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 0; k < n; ++k) direct = direct * (X + Y);

  Eigen::MatrixXcd words = Eigen::MatrixXcd::Zero(dim, dim);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim, dim);
    for (int k = 0; k < n; ++k) w = w * (((mask >> k) & 1u) ? Y : X);
    words += w;
  }
  return (direct - words).cwiseAbs().maxCoeff();
}

TwoModeState dop_word_expansion(int n, double eta) {
  if (n < 0 || n > 16) throw std::invalid_argument("word enumeration supported for n <= 16");
  const int cutoff = std::max(n, 1);
  TwoModeState total(cutoff);
  const auto x = [eta](const TwoModeState& s) {
    return Complex(eta) * apply_create(1, apply_number(2, s));
  };
  const auto y = [eta](const TwoModeState& s) {
    return Complex(1.0 / eta) * apply_create(2, s);
  };
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    TwoModeState w = vacuum(cutoff);
    // Letters act right to left: bit 0 is applied first.
    for (int k = 0; k < n; ++k) w = (((mask >> k) & 1u) ? y(w) : x(w));
    total += w;
  }
  return total;
}

}  // namespace bethe
