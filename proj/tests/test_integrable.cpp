#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bethe/checks.hpp"
#include "bethe/integrable.hpp"
#include "bethe/rng.hpp"

using namespace bethe;

TEST_CASE("R-matrix entries and the b + c = 1 identity") {
  const RMatrix r = build_r_matrix(Complex{1.0, 0.0}, 1.0);
  CHECK(r(1, 1) == Complex{0.5, 0.0});
  CHECK(r(1, 2) == Complex{0.5, 0.0});
  CHECK(r(0, 0) == Complex{1.0, 0.0});
  CHECK(r(3, 3) == Complex{1.0, 0.0});

  // u = 0 collapses to the permutation matrix.
  const RMatrix perm = build_r_matrix(Complex{0.0, 0.0}, 1.0);
  CHECK(perm(1, 1) == Complex{0.0, 0.0});
  CHECK(perm(1, 2) == Complex{1.0, 0.0});

  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Complex u = rng.in_box(2.0);
    const double eta = rng.uniform(0.3, 2.5);
    if (std::abs(u + eta) < 0.1) continue;
    const RMatrix m = build_r_matrix(u, eta);
    CHECK(std::abs(m(1, 1) + m(1, 2) - 1.0) < 1e-15);
  }

  CHECK_THROWS_AS(build_r_matrix(Complex{-1.0, 0.0}, 1.0), std::domain_error);
}

TEST_CASE("Yang-Baxter residual vanishes") {
  CHECK(check_yang_baxter({0.7, 0.0}, {0.3, 0.0}, 1.0) < 1e-13);
  CHECK(check_yang_baxter({0.4, 0.0}, {0.4, 0.0}, 1.0) < 1e-13);
  CHECK(check_yang_baxter({0.9, 0.4}, {-0.2, 0.7}, 0.5) < 1e-12);
  CHECK(yang_baxter_sweep(100, 17) < 1e-12);
}

TEST_CASE("monodromy entries act on the vacuum as stated") {
  const ABAParams p{1.0, 0.0};
  const TwoModeState vac = vacuum(4);

  const TwoModeState dvac = monodromy_entry(Entry::D, {0.3, 0.0}, p)(vac);
  CHECK(norm(dvac - Complex{1.0, 0.0} * vac) < 1e-15);

  const Complex u{0.7, 0.0};
  const ABAParams q{2.0, 0.5};
  const TwoModeState cvac = monodromy_entry(Entry::C, u, q)(vac);
  CHECK(std::abs(cvac.amp({1, 0}) - (u - q.omega)) < 1e-15);
  CHECK(std::abs(cvac.amp({0, 1}) - 1.0 / q.eta) < 1e-15);
  CHECK(cvac.amps().size() == 2);

  CHECK(monodromy_entry(Entry::B, u, q)(vac).is_zero());

  // C raises the total number and must surface overflow from the ladder
  // layer.
  const TwoModeState full = basis_state(2, 2, 4);
  CHECK_THROWS_AS(monodromy_entry(Entry::C, u, q)(full), CutoffOverflow);
}

TEST_CASE("RLL relation holds for the single-mode Lax operator") {
  CHECK(check_rll({0.9, 0.0}, {0.2, 0.0}, ABAParams{1.0, 0.0}, 6) < 1e-11);
  CHECK(check_rll({0.4, 0.1}, {0.4, 0.1}, ABAParams{1.0, 0.0}, 6) < 1e-13);
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const Complex u = rng.in_box(1.5);
    const Complex v = rng.in_box(1.5);
    if (std::abs(u - v + 0.5) < 0.1) continue;
    CHECK(check_rll(u, v, ABAParams{0.5, 0.0}, 6) < 1e-10);
  }
}

TEST_CASE("transfer matrix: scalar sector, hermiticity, commuting family") {
  const ABAParams p{1.3, 0.4};
  const Complex u{0.8, 0.0};
  const SectorMatrix t0 = build_transfer_matrix(u, p, 0);
  const Complex expected = u * u - p.omega * p.omega + 1.0 / (p.eta * p.eta);
  CHECK(std::abs(t0.mat(0, 0) - expected) < 1e-14);

  for (int n : {1, 3, 6}) {
    const SectorMatrix t = build_transfer_matrix({0.6, 0.0}, p, n);
    const double scale = t.mat.cwiseAbs().maxCoeff();
    CHECK((t.mat - t.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * scale);
  }

  CHECK(transfer_commutativity_sweep(p, 12, 50, 23) < 1e-10);
}

TEST_CASE("sector Hamiltonian matches hand-computed matrix elements") {
  const SectorMatrix h = build_hamiltonian({1.0, 0.0, 1.0}, 1);
  CHECK(h.mat(0, 0) == Complex{0.125, 0.0});
  CHECK(h.mat(1, 1) == Complex{0.125, 0.0});
  CHECK(h.mat(0, 1) == Complex{-0.5, 0.0});
  CHECK(h.mat(1, 0) == Complex{-0.5, 0.0});

  CHECK(build_hamiltonian({1.0, 0.0, 1.0}, 0).mat(0, 0) == Complex{0.0, 0.0});

  const SectorMatrix big = build_hamiltonian({2.0, 0.7, 1.3}, 9);
  CHECK((big.mat - big.mat.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling map and the transfer-matrix identity") {
  const ABAParams a = to_aba({1.0, 0.0, 1.0});
  CHECK(a.eta == doctest::Approx(1.0));
  CHECK(a.omega == doctest::Approx(0.0));

  const ABAParams b = to_aba({4.0, 0.0, 1.0});
  CHECK(b.eta == doctest::Approx(2.0));

  const ABAParams c = to_aba({1.0, 1.0, 1.0});
  CHECK(c.eta == doctest::Approx(1.0));
  CHECK(c.omega == doctest::Approx(-1.0));

  for (const ModelParams mp : {ModelParams{1.0, 0.0, 1.0}, ModelParams{4.0, 0.0, 1.0},
                               ModelParams{1.0, 1.0, 1.0}, ModelParams{2.5, -0.8, 1.7}}) {
    const ABAParams p = to_aba(mp);
    for (int n = 0; n <= 6; ++n) {
      const Eigen::MatrixXcd direct = build_hamiltonian(mp, n).mat;
      const Eigen::MatrixXcd via = hamiltonian_from_transfer(p, mp.ej, n).mat;
      CHECK((direct - via).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  CHECK_THROWS_AS(to_aba({-1.0, 0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(to_aba({1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("round trip through to_physical") {
  const ABAParams p{1.7, -0.6};
  const ABAParams back = to_aba(to_physical(p));
  CHECK(back.eta == doctest::Approx(p.eta).epsilon(1e-14));
  CHECK(back.omega == doctest::Approx(p.omega).epsilon(1e-14));
}

TEST_CASE("exact spectrum oracle") {
  const Spectrum s = exact_spectrum({1.0, 0.0, 1.0}, 1);
  CHECK(s.values(0) == doctest::Approx(-0.375).epsilon(1e-14));
  CHECK(s.values(1) == doctest::Approx(0.625).epsilon(1e-14));

  CHECK(exact_spectrum({1.0, 0.0, 1.0}, 0).values(0) == 0.0);

  const ModelParams mp{1.8, 0.4, 0.9};
  for (int n : {2, 5, 8}) {
    const SectorMatrix h = build_hamiltonian(mp, n);
    const Spectrum spec = diagonalize(h);
    const double trace_gap = std::abs(spec.values.sum() - h.mat.trace().real());
    CHECK(trace_gap < 1e-10 * std::max(1.0, std::abs(h.mat.trace().real())));
    // Orthonormal eigenvectors.
    const Eigen::MatrixXcd gram = spec.vectors.adjoint() * spec.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("number conservation is structural") {
  // A and D never mix sectors: applying them to a sector basis ket leaves
  // support on that sector only.
  const ABAParams p{0.8, 0.3};
  for (int n1 = 0; n1 <= 3; ++n1) {
    for (int n2 = 0; n1 + n2 <= 3; ++n2) {
      const TwoModeState ket = basis_state(n1, n2, 4);
      for (Entry e : {Entry::A, Entry::D}) {
        const TwoModeState out = monodromy_entry(e, {0.4, 0.2}, p)(ket);
        for (const auto& [key, amp] : out.amps()) {
          CHECK(key.n1 + key.n2 == n1 + n2);
        }
      }
      // Same for the Hamiltonian terms themselves.
      TwoModeState h = apply_number(1, ket) - apply_number(2, ket);
      h += apply_create(1, apply_annihilate(2, ket));
      h += apply_create(2, apply_annihilate(1, ket));
      for (const auto& [key, amp] : h.amps()) {
        CHECK(key.n1 + key.n2 == n1 + n2);
      }
    }
  }
}

TEST_CASE("hamiltonian identity sweep over the coupling grid") {
  const double interactions[] = {0.5, 1.0, 3.0};
  const double potentials[] = {-1.0, 0.0, 0.8};
  const double tunnellings[] = {0.5, 1.0, 2.0};
  CHECK(hamiltonian_identity_sweep(interactions, potentials, tunnellings, 10) < 1e-12);
}
