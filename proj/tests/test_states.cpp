#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "entangle/states.hpp"
#include "oracle.hpp"

using namespace entangle;

TEST_CASE("maximally entangled and GHZ vectors") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const auto psi = states::max_entangled(d);
    CHECK(psi.dims() == Dims{d, d});
    for (std::size_t i = 0; i < d; ++i)
      CHECK(std::abs(psi.amplitudes()(static_cast<Eigen::Index>(i * d + i)) - 1.0 / std::sqrt(double(d))) < 1e-15);
  }
  CHECK_THROWS_AS(states::max_entangled(1), UsageError);
  const auto ghz = states::ghz3();
  CHECK(ghz.dims() == Dims{2, 2, 2});
  CHECK(std::abs(ghz.amplitudes()(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(ghz.amplitudes()(7) - 1 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("locking state layout, spectrum and certificate") {
  for (std::size_t d : {2u, 3u}) {
    const auto lock = states::horodecki_locking(d);
    CHECK(lock.state.dims() == Dims{2 * d, d});
    CHECK(lock.certificate.kind == StateCertificate::Kind::KnownOneWayDistillable);
    const auto ev = oracle::eigenvalues(lock.state.matrix());
    // 1/2 on the maximally entangled block, 1/(2 d^2) on the d^2 flat block.
    CHECK(ev[0] == doctest::Approx(0.5));
    for (std::size_t k = 1; k <= d * d; ++k) CHECK(ev[k] == doctest::Approx(0.5 / double(d * d)));
    CHECK(std::abs(ev[d * d + 1]) < 1e-12);
  }
}

TEST_CASE("locking purification has the locking state as its AC marginal") {
  for (std::size_t d : {2u, 3u}) {
    const auto lp = states::locking_purification(d);
    CHECK(lp.psi.dims() == Dims{2 * d, d * d + 1, d});
    CHECK(lp.certs.ac.kind == StateCertificate::Kind::KnownOneWayDistillable);
    const auto m = states::reduce_all(lp.psi);
    CHECK(oracle::max_abs_diff(m.ac.matrix(), states::horodecki_locking(d).state.matrix()) < 1e-12);
  }
}

TEST_CASE("antisymmetric state marginals are the normalised antisymmetric projector") {
  const auto psi = states::antisymmetric_tripartite();
  CHECK(psi.dims() == Dims{3, 3, 3});
  const auto m = states::reduce_all(psi);
  ComplexMatrix swap = ComplexMatrix::Zero(9, 9);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) swap(i * 3 + j, j * 3 + i) = 1.0;
  const ComplexMatrix expected = (ComplexMatrix::Identity(9, 9) - swap) / 6.0;
  CHECK(oracle::max_abs_diff(m.ab.matrix(), expected) < 1e-14);
  CHECK(oracle::max_abs_diff(m.ac.matrix(), expected) < 1e-14);
  CHECK(oracle::max_abs_diff(m.bc.matrix(), expected) < 1e-14);
  CHECK(oracle::max_abs_diff(m.a.matrix(), ComplexMatrix::Identity(3, 3) / 3.0) < 1e-14);
}

TEST_CASE("tiles basis is an orthonormal set of product vectors") {
  const auto basis = states::tiles_basis();
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const Complex ip = basis[i].dot(basis[j]);
      CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0)) < 1e-14);
    }
    // Reshaped to 3 x 3 a product vector has rank one.
    Eigen::Matrix3cd reshaped;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) reshaped(r, c) = basis[i](r * 3 + c);
    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(reshaped);
    CHECK(svd.singularValues()(1) < 1e-14);
  }
}

TEST_CASE("tiles state is PPT with rank four") {
  const auto tiles = states::tiles_bound_entangled();
  CHECK(tiles.certificate.kind == StateCertificate::Kind::KnownEntangled);
  const auto ev = oracle::eigenvalues(tiles.state.matrix());
  for (std::size_t k = 0; k < 4; ++k) CHECK(ev[k] == doctest::Approx(0.25));
  for (std::size_t k = 4; k < 9; ++k) CHECK(std::abs(ev[k]) < 1e-12);
  const auto pt = oracle::eigenvalues(oracle::partial_transpose(tiles.state.matrix(), {3, 3}, 1));
  CHECK(pt.back() > -1e-12);
}

TEST_CASE("tiles purification keeps the tiles state on AB") {
  const auto tp = states::tiles_purification();
  CHECK(tp.psi.dims() == Dims{3, 3, 4});
  CHECK(tp.certs.ab.kind == StateCertificate::Kind::KnownEntangled);
  const auto m = states::reduce_all(tp.psi);
  CHECK(oracle::max_abs_diff(m.ab.matrix(), states::tiles_bound_entangled().state.matrix()) < 1e-12);
}

TEST_CASE("random constructions are seeded and well formed") {
  const auto a = states::random_pure({2, 3}, Seed{5});
  const auto b = states::random_pure({2, 3}, Seed{5});
  const auto c = states::random_pure({2, 3}, Seed{6});
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(a.amplitudes() != c.amplitudes());

  for (std::size_t rank = 1; rank <= 6; ++rank) {
    const auto rho = states::random_density(6, rank, Seed{rank});
    const auto ev = oracle::eigenvalues(rho.matrix());
    std::size_t nonzero = 0;
    for (double x : ev) nonzero += x > 1e-10;
    CHECK(nonzero == rank);
  }
  CHECK_THROWS_AS(states::random_density(4, 5, Seed{1}), UsageError);
  CHECK_THROWS_AS(states::random_density(4, 0, Seed{1}), UsageError);

  const auto u = states::random_unitary(4, Seed{9});
  CHECK(oracle::max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(4, 4)) < 1e-13);
}

TEST_CASE("random separable certificate reconstructs its state") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto sep = states::random_separable(2 + seed % 2, 2 + seed % 3, 1 + seed % 5, Seed{seed});
    REQUIRE(sep.certificate.kind == StateCertificate::Kind::SeparableDecomposition);
    CHECK(sep.certificate.terms.size() == 1 + seed % 5);
    CHECK(sep.certificate.reconstruction_error(sep.state) <= 1e-12);
    double total = 0;
    for (const auto& t : sep.certificate.terms) {
      CHECK(t.weight >= 0);
      total += t.weight;
    }
    CHECK(total == doctest::Approx(1.0));
  }
  CHECK(std::isinf(StateCertificate::none().reconstruction_error(states::bell().projector())));
}

TEST_CASE("local unitaries preserve marginal spectra") {
  const auto psi = states::random_pure({2, 3, 2}, Seed{12});
  const auto rotated = states::apply_local_unitaries(
      psi, {states::random_unitary(2, Seed{1}), states::random_unitary(3, Seed{2}), states::random_unitary(2, Seed{3})});
  const auto m0 = states::reduce_all(psi), m1 = states::reduce_all(rotated);
  const auto e0 = oracle::eigenvalues(m0.ab.matrix()), e1 = oracle::eigenvalues(m1.ab.matrix());
  for (std::size_t k = 0; k < e0.size(); ++k) CHECK(std::abs(e0[k] - e1[k]) < 1e-10);
  CHECK_THROWS_AS(states::apply_local_unitaries(psi, {states::random_unitary(2, Seed{1})}), UsageError);
}

TEST_CASE("derived seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(Seed{42}, i).value);
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(Seed{1}, 0).value != derive_seed(Seed{2}, 0).value);
}

TEST_CASE("builtin registry") {
  for (const auto& name : states::builtin_names()) {
    const auto b = states::builtin(name);
    CHECK(b.name == name);
    CHECK(b.mixed.has_value() != b.pure.has_value());
  }
  CHECK_THROWS_AS(states::builtin("nope"), UsageError);
  CHECK_THROWS_AS(states::builtin("maxent:x"), UsageError);
}
