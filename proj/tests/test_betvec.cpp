#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "bethe/betvec.hpp"
#include "bethe/checks.hpp"
#include "bethe/rng.hpp"

using namespace bethe;

namespace {

// Literal multiple-sum for the top coefficient: sum over strictly decreasing
// index tuples (j1 > j2 > ... > jN) of F0 / (f_j1 ... f_jN). With N indices
// drawn from 1..N the constraint leaves exactly one tuple, (N, N-1, ..., 1).
// Independent oracle; requires all f nonzero.
Complex top_coefficient_multiple_sum(const std::vector<Complex>& f) {
  const int n = static_cast<int>(f.size());
  Complex f0{1.0, 0.0};
  for (const Complex& x : f) f0 *= x;
  Complex total{0.0, 0.0};
  Complex denom{1.0, 0.0};
  for (int j = n - 1; j >= 0; --j) denom *= f[j];
  total += f0 / denom;
  return total;
}

}  // namespace

TEST_CASE("f values shift rapidities by omega") {
  const std::vector<Complex> roots{{1.0, 0.0}, {-1.0, 0.0}};
  const FValues fv = f_values(roots, 0.0);
  CHECK(fv.f[0] == Complex{1.0, 0.0});
  CHECK(fv.f[1] == Complex{-1.0, 0.0});

  const std::vector<Complex> single{{2.0, 0.0}};
  CHECK(f_values(single, 0.5).f[0] == Complex{1.5, 0.0});

  const std::vector<Complex> degenerate{{0.5, 0.0}};
  CHECK(f_values(degenerate, 0.5).f[0] == Complex{0.0, 0.0});
}

TEST_CASE("F coefficients are elementary symmetric polynomials") {
  FValues fv;
  fv.f = {{2.0, 0.0}, {3.0, 0.0}};
  const FCoeffs F = compute_F(fv);
  CHECK(F.F[0] == Complex{6.0, 0.0});
  CHECK(F.F[1] == Complex{5.0, 0.0});
  CHECK(F.F[2] == Complex{1.0, 0.0});

  FValues one;
  one.f = {{0.7, 0.2}};
  const FCoeffs Fo = compute_F(one);
  CHECK(Fo.F[0] == Complex{0.7, 0.2});
  CHECK(Fo.F[1] == Complex{1.0, 0.0});

  // Top coefficient equals the telescoping multiple sum when all f nonzero.
  Rng rng(19);
  for (int rep = 0; rep < 10; ++rep) {
    FValues random;
    for (int i = 0; i < 5; ++i) random.f.push_back(rng.in_box(2.0));
    const FCoeffs Fr = compute_F(random);
    CHECK(std::abs(Fr.F[5] - top_coefficient_multiple_sum(random.f)) < 1e-12);
    Complex prod{1.0, 0.0};
    for (const Complex& x : random.f) prod *= x;
    CHECK(std::abs(Fr.F[0] - prod) < 1e-12 * std::max(1.0, std::abs(prod)));
  }

  // Vanishing f values are allowed.
  FValues with_zero;
  with_zero.f = {{0.0, 0.0}, {2.0, 0.0}};
  const FCoeffs Fz = compute_F(with_zero);
  CHECK(Fz.F[0] == Complex{0.0, 0.0});
  CHECK(Fz.F[1] == Complex{2.0, 0.0});
  CHECK(Fz.F[2] == Complex{1.0, 0.0});
}

TEST_CASE("a1^+ commutes with the raising combination") {
  CHECK(check_a1dag_commutes(1.0, 6) == 0.0);
  CHECK(check_a1dag_commutes(0.3, 6) < 1e-14);
  CHECK(check_a1dag_commutes(1.0, 2) == 0.0);
}

TEST_CASE("C table recursion reproduces the ladder-operator rows") {
  const CoeffTableC t1 = compute_C_recursion(2, 1.0);
  CHECK(t1(0, 0) == 1.0);
  CHECK(t1(1, 0) == 1.0);
  CHECK(t1(1, 1) == 0.0);
  CHECK(t1(2, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(t1(2, 1) == 1.0);
  CHECK(t1(2, 2) == 0.0);

  const CoeffTableC t2 = compute_C_recursion(2, 2.0);
  CHECK(t2(2, 0) == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-15));

  // Out-of-range reads are zero.
  CHECK(t1(2, 3) == 0.0);
  CHECK(t1(-1, 0) == 0.0);
}

TEST_CASE("closed form agrees with the recursion and handles 0^0") {
  CHECK(compute_C_closed(0, 0, 1.7) == 1.0);
  CHECK(compute_C_closed(2, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (int j = 1; j <= 5; ++j) CHECK(compute_C_closed(j, j, 0.9) == 0.0);

  CHECK(c_table_agreement(12, std::vector<double>{0.3, 1.0, 2.5}) < 1e-10);
}

TEST_CASE("raising-combination powers on the vacuum") {
  const TwoModeState zero = apply_D_power(0, 1.0);
  CHECK(zero.amp({0, 0}) == Complex{1.0, 0.0});

  const TwoModeState one = apply_D_power(1, 1.0);
  CHECK(one.amp({0, 1}) == Complex{1.0, 0.0});
  CHECK(one.amps().size() == 1);

  const TwoModeState two = apply_D_power(2, 1.0);
  CHECK(two.amp({1, 1}) == Complex{1.0, 0.0});
  CHECK(std::abs(two.amp({0, 2}) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("monodromy D powers fix the vacuum") {
  CHECK(check_D_power_vacuum(1, 1.0) == 0.0);
  CHECK(check_D_power_vacuum(5, 0.5) < 1e-12 * 1024.0);
  CHECK(check_D_power_vacuum(0, 3.0) == 0.0);
  CHECK(d_power_vacuum_sweep(10, std::vector<double>{0.5, 1.0, 2.0}) < 1e-12);
}

TEST_CASE("state assembly matches the worked N=1 cases") {
  const ABAParams p{1.0, 0.0};
  const CoeffTableC table(1, p.eta);

  const std::vector<Complex> plus{{1.0, 0.0}};
  const Eigen::VectorXcd sp = bethe_state(plus, p.omega, table);
  CHECK(std::abs(sp(1) - 1.0) < 1e-15);
  CHECK(std::abs(sp(0) - 1.0) < 1e-15);

  const std::vector<Complex> minus{{-1.0, 0.0}};
  const Eigen::VectorXcd sm = bethe_state(minus, p.omega, table);
  CHECK(std::abs(sm(1) + 1.0) < 1e-15);
  CHECK(std::abs(sm(0) - 1.0) < 1e-15);

  // N = 0: the bare vacuum coefficient.
  const FCoeffs f0{{Complex{1.0, 0.0}}};
  const CoeffTableC t0(0, 1.0);
  const Eigen::VectorXcd s0 = assemble_state(f0, t0, 0);
  CHECK(s0(0) == Complex{1.0, 0.0});
}

TEST_CASE("product form oracle equals the assembled state") {
  const ABAParams p{1.0, 0.0};
  const std::vector<Complex> plus{{1.0, 0.0}};
  const TwoModeState prod = product_form_oracle(plus, p, 1);
  CHECK(std::abs(prod.amp({1, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(prod.amp({0, 1}) - 1.0) < 1e-15);

  CHECK(product_form_oracle({}, p, 2).amp({0, 0}) == Complex{1.0, 0.0});

  const std::vector<Complex> three{{0.4, 0.1}, {0.2, -0.3}, {1.1, 0.0}};
  CHECK_THROWS_AS(product_form_oracle(three, p, 2), std::invalid_argument);

  // Order reversal leaves the state unchanged: the C operators commute.
  Rng rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const ABAParams q{rng.uniform(0.3, 2.5), rng.uniform(-1.0, 1.0)};
    std::vector<Complex> roots(4);
    for (Complex& z : roots) z = rng.in_disk(3.0);
    const TwoModeState fwd = product_form_oracle(roots, q, 4);
    std::reverse(roots.begin(), roots.end());
    const TwoModeState rev = product_form_oracle(roots, q, 4);
    CHECK(norm(fwd - rev) < 1e-12 * norm(fwd));
  }

  // Off-shell assembly equivalence, random parameters.
  CHECK(assembly_off_shell_sweep(6, 100, 31) < 1e-9);
}

TEST_CASE("state-to-roots inversion recovers the rapidity multiset") {
  Rng rng(53);
  for (int rep = 0; rep < 20; ++rep) {
    const ABAParams p{rng.uniform(0.3, 2.5), rng.uniform(-1.0, 1.0)};
    const int n = 1 + static_cast<int>(rng.next() % 6);
    std::vector<Complex> roots(n);
    for (Complex& z : roots) z = rng.in_disk(2.5);

    const Eigen::VectorXcd state = bethe_state(roots, p);
    std::vector<Complex> recovered = roots_from_state(state, p);
    REQUIRE(recovered.size() == roots.size());

    // Match greedily as multisets.
    for (const Complex& r : roots) {
      double best = 1e300;
      std::size_t arg = 0;
      for (std::size_t k = 0; k < recovered.size(); ++k) {
        if (std::abs(recovered[k] - r) < best) {
          best = std::abs(recovered[k] - r);
          arg = k;
        }
      }
      CHECK(best < 1e-6 * std::max(1.0, std::abs(r)));
      recovered.erase(recovered.begin() + static_cast<std::ptrdiff_t>(arg));
    }
  }

  CHECK(roots_from_state(Eigen::VectorXcd::Ones(1), ABAParams{1.0, 0.0}).empty());
}

TEST_CASE("every assembled state lives in one number sector") {
  Rng rng(37);
  const ABAParams p{0.8, 0.4};
  std::vector<Complex> roots(5);
  for (Complex& z : roots) z = rng.in_disk(3.0);
  const TwoModeState state = product_form_oracle(roots, p, 5);
  for (const auto& [key, amp] : state.amps()) CHECK(key.n1 + key.n2 == 5);
}

TEST_CASE("commutator-corrected binomial identities") {
  Eigen::MatrixXcd dx = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::MatrixXcd dy = Eigen::MatrixXcd::Zero(3, 3);
  dx.diagonal() << 1.0, 2.0, 3.0;
  dy.diagonal() << -0.5, 0.25, 4.0;
  CHECK(check_binomial_identity(2, dx, dy) == 0.0);
  CHECK(check_binomial_identity(3, dx, dy) < 1e-14);

  Rng rng(43);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd x(4, 4), y(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        x(i, j) = rng.in_box(1.0);
        y(i, j) = rng.in_box(1.0);
      }
    CHECK(check_binomial_identity(2, x, y) < 1e-13);
    CHECK(check_binomial_identity(3, x, y) < 1e-12);
  }

  CHECK_THROWS_AS(check_binomial_identity(2, Eigen::MatrixXcd::Zero(2, 2),
                                          Eigen::MatrixXcd::Zero(3, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_binomial_identity(4, dx, dy), std::invalid_argument);
}

TEST_CASE("word expansion of operator powers") {
  Rng rng(47);
  Eigen::MatrixXcd x(3, 3), y(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      x(i, j) = rng.in_box(1.0);
      y(i, j) = rng.in_box(1.0);
    }
  CHECK(permutation_expansion(1, x, y) < 1e-15);
  CHECK(permutation_expansion(4, x, y) < 1e-12);

  // Operator-level consistency: enumerating the words of the raising pair
  // reproduces the direct power application.
  for (double eta : {0.5, 1.0, 2.0}) {
    const TwoModeState words = dop_word_expansion(3, eta);
    const TwoModeState direct = apply_D_power(3, eta);
    CHECK(norm(words - direct) < 1e-13 * norm(direct));
  }
}
