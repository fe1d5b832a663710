#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "entangle/linalg.hpp"
#include "entangle/states.hpp"
#include "oracle.hpp"

using namespace entangle;

namespace {

QuantumState random_state(const Dims& dims, std::uint64_t seed, std::size_t rank = 0) {
  const std::size_t n = dimension_product(dims);
  const std::size_t r = rank == 0 ? 1 + seed % n : rank;
  return QuantumState(states::random_density(n, r, Seed{seed}).matrix(), dims);
}

ComplexMatrix diag(std::initializer_list<double> values) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST_CASE("state construction validates its invariants") {
  CHECK_NOTHROW(QuantumState(diag({0.5, 0.5}), {2}));
  CHECK_THROWS_AS(QuantumState(diag({0.6, 0.6}), {2}), InvariantError);
  CHECK_THROWS_AS(QuantumState(diag({1.5, -0.5}), {2}), InvariantError);
  CHECK_THROWS_AS(QuantumState(diag({0.5, 0.5}), {3}), InvariantError);
  CHECK_THROWS_AS(QuantumState(diag({0.5, 0.5}), {2, 0}), InvariantError);

  ComplexMatrix skew = diag({0.5, 0.5});
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(QuantumState(skew, {2}), InvariantError);

  ComplexMatrix nan = diag({0.5, 0.5});
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(QuantumState(nan, {2}), InvariantError);

  Tolerances small;
  small.max_dimension = 3;
  CHECK_THROWS_AS(QuantumState(diag({0.25, 0.25, 0.25, 0.25}), {2, 2}, small), DimensionError);

  // Slightly asymmetric input within tolerance is stored exactly Hermitian.
  ComplexMatrix near = diag({0.5, 0.5});
  near(0, 1) = 1e-12;
  const QuantumState s(near, {2});
  CHECK(hermitian_defect(s.matrix()) == 0.0);
}

TEST_CASE("pure vectors must be normalised") {
  ComplexVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureVector(v, {2}), InvariantError);
  CHECK_NOTHROW(PureVector(v / std::sqrt(2.0), {2}));
  const PureVector psi(v / std::sqrt(2.0), {2});
  CHECK(oracle::max_abs_diff(psi.projector().matrix(), ComplexMatrix::Constant(2, 2, 0.5)) < 1e-15);
}

TEST_CASE("tensor product agrees with the index-loop oracle") {
  const auto a = random_state({2}, 3), b = random_state({3}, 4);
  const auto ab = tensor_product(a, b);
  CHECK(ab.dims() == Dims{2, 3});
  CHECK(oracle::max_abs_diff(ab.matrix(), oracle::kron(a.matrix(), b.matrix())) < 1e-15);
  CHECK_THROWS_AS(tensor_product(ComplexMatrix::Identity(70, 70), ComplexMatrix::Identity(70, 70)), DimensionError);
}

TEST_CASE("partial trace agrees with the oracle on every keep set") {
  const Dims dims = {2, 3, 2};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rho = random_state(dims, seed);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
      const auto reduced = partial_trace(rho, keep);
      CHECK(oracle::max_abs_diff(reduced.matrix(), oracle::partial_trace(rho.matrix(), dims, keep)) < 1e-14);
    }
  }
  const auto rho = random_state(dims, 9);
  const std::size_t bad_order[] = {1, 0};
  const std::size_t out_of_range[] = {3};
  CHECK_THROWS_AS(partial_trace(rho, bad_order), UsageError);
  CHECK_THROWS_AS(partial_trace(rho, out_of_range), UsageError);
}

TEST_CASE("pure-state partial trace matches the mixed path") {
  const auto psi = states::random_pure({2, 3, 2}, Seed{11});
  for (const std::vector<std::size_t>& keep : {std::vector<std::size_t>{0, 1}, {0, 2}, {1, 2}, {1}}) {
    const auto a = partial_trace(psi, keep);
    const auto b = partial_trace(psi.projector(), keep);
    CHECK(oracle::max_abs_diff(a.matrix(), b.matrix()) < 1e-14);
  }
}

TEST_CASE("partial transpose: oracle, involution, trace and spectrum sum") {
  const Dims dims = {3, 2};
  const auto rho = random_state(dims, 21);
  for (std::size_t sub : {0u, 1u}) {
    const ComplexMatrix pt = partial_transpose(rho, sub);
    CHECK(oracle::max_abs_diff(pt, oracle::partial_transpose(rho.matrix(), dims, sub)) < 1e-15);
    CHECK(oracle::max_abs_diff(partial_transpose(pt, dims, sub), rho.matrix()) < 1e-15);
    CHECK(std::abs(pt.trace() - Complex(1.0)) < 1e-12);
  }
  // Full transpose equals transposing both parties.
  const ComplexMatrix both = partial_transpose(partial_transpose(rho, 0), dims, 1);
  CHECK(oracle::max_abs_diff(both, rho.matrix().transpose()) < 1e-15);
}

TEST_CASE("permute_subsystems: oracle and inverse round trip") {
  const Dims dims = {2, 3, 4};
  const auto rho = random_state(dims, 31, 5);
  const std::size_t order[] = {2, 0, 1};
  const std::size_t inverse[] = {1, 2, 0};
  const auto p = permute_subsystems(rho, order);
  CHECK(p.dims() == Dims{4, 2, 3});
  CHECK(oracle::max_abs_diff(p.matrix(), oracle::permute(rho.matrix(), dims, {2, 0, 1})) < 1e-15);
  CHECK(oracle::max_abs_diff(permute_subsystems(p, inverse).matrix(), rho.matrix()) < 1e-15);

  const auto psi = states::random_pure(dims, Seed{32});
  const auto q = permute_subsystems(psi, order);
  CHECK(oracle::max_abs_diff(q.projector().matrix(), permute_subsystems(psi.projector(), order).matrix()) < 1e-14);

  const auto ab = random_state({2, 3}, 33);
  const auto swapped = swap_parties(ab);
  CHECK(swapped.dims() == Dims{3, 2});
  CHECK(oracle::max_abs_diff(swap_parties(swapped).matrix(), ab.matrix()) < 1e-15);
}

TEST_CASE("hermitian spectrum matches the Jacobi oracle") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 2 + seed % 8;
    const auto rho = random_state({n}, seed);
    const auto spec = hermitian_spectrum(rho.matrix());
    const auto ref = oracle::eigenvalues(rho.matrix());
    REQUIRE(spec.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(spec.values[k] - ref[k]) < 1e-10);
    CHECK(std::is_sorted(spec.values.rbegin(), spec.values.rend()));
  }
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_spectrum(bad), NumericError);
}

TEST_CASE("eigensystem reconstructs the matrix") {
  const auto rho = random_state({6}, 5, 6);
  const auto es = hermitian_eigensystem(rho.matrix());
  Eigen::VectorXcd lambda(6);
  for (Eigen::Index k = 0; k < 6; ++k) lambda(k) = es.spectrum.values[static_cast<std::size_t>(k)];
  const ComplexMatrix back = es.vectors * lambda.asDiagonal() * es.vectors.adjoint();
  CHECK(oracle::max_abs_diff(back, rho.matrix()) < 1e-12);
}

TEST_CASE("von Neumann entropy") {
  for (std::size_t d = 2; d <= 6; ++d) {
    const QuantumState mixed(ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) /
                                 static_cast<double>(d),
                             {d});
    CHECK(std::abs(von_neumann_entropy(mixed) - std::log2(static_cast<double>(d))) < 1e-12);
  }
  CHECK(von_neumann_entropy(states::random_pure({3}, Seed{4}).projector()) == doctest::Approx(0.0).epsilon(1e-12));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rho = random_state({4}, seed);
    CHECK(std::abs(von_neumann_entropy(rho) - oracle::entropy_bits(oracle::eigenvalues(rho.matrix()))) < 1e-9);
  }
}

TEST_CASE("majorization examples and witness") {
  const Spectrum pure{{1.0, 0.0}}, flat{{0.5, 0.5}};
  CHECK(majorizes(pure, flat).holds);
  const auto r = majorizes(flat, pure);
  CHECK_FALSE(r.holds);
  REQUIRE(r.violated_prefix);
  CHECK(*r.violated_prefix == 1);
  CHECK(r.min_gap == doctest::Approx(-0.5));

  // Zero padding: a 2-vector against a 4-vector.
  CHECK(majorizes(Spectrum{{0.5, 0.5}}, Spectrum{{0.25, 0.25, 0.25, 0.25}}).holds);
  CHECK_FALSE(majorizes(Spectrum{{0.25, 0.25, 0.25, 0.25}}, Spectrum{{0.5, 0.5}}).holds);

  // Locking state d = 2: (1/2, 1/2) against (1/2, 1/8 x 4) holds with equality at prefix 1.
  CHECK(majorizes(Spectrum{{0.5, 0.5}}, Spectrum{{0.5, 0.125, 0.125, 0.125, 0.125}}).holds);
}

TEST_CASE("majorization is a preorder and agrees with the oracle") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto random_prob = [&](std::size_t n) {
    std::vector<double> v(n);
    double s = 0;
    for (auto& x : v) s += (x = u(gen) * u(gen));
    for (auto& x : v) x /= s;
    std::sort(v.rbegin(), v.rend());
    return Spectrum{v};
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_prob(4), q = random_prob(3), r = random_prob(5);
    CHECK(majorizes(p, p).holds);
    CHECK(majorizes(p, q).holds == oracle::majorizes(p.values, q.values));
    if (majorizes(p, q).holds && majorizes(q, r).holds) CHECK(majorizes(p, r).holds);
    CHECK(majorizes(p, Spectrum{{0.2, 0.2, 0.2, 0.2, 0.2}}).holds);
    CHECK(majorizes(Spectrum{{1.0}}, p).holds);
  }
}

TEST_CASE("numerical rank uses a relative cut") {
  CHECK(numerical_rank(Spectrum{{0.5, 0.5, 1e-12}}) == 2);
  CHECK(numerical_rank(Spectrum{{0.5, 0.5, 1e-6}}) == 3);
  for (std::size_t r = 1; r <= 6; ++r) CHECK(numerical_rank(random_state({6}, 40 + r, r).matrix()) == r);
}

TEST_CASE("spectrum distance pads with zeros") {
  CHECK(spectrum_distance(Spectrum{{0.5, 0.5}}, Spectrum{{0.5, 0.5, 0.0}}) == 0.0);
  CHECK(spectrum_distance(Spectrum{{1.0}}, Spectrum{{0.5, 0.5}}) == doctest::Approx(0.5));
}

TEST_CASE("purification round trip on random states") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const std::size_t da = 2 + seed % 2, db = 2 + (seed / 2) % 2;
    const auto rho = random_state({da, db}, seed);
    const auto psi = purify(rho);
    REQUIRE(psi.parties() == 3);
    CHECK(psi.dims()[0] == da);
    CHECK(psi.dims()[1] == db);
    CHECK(psi.dims()[2] == numerical_rank(rho.matrix()));
    const std::size_t keep[] = {0, 1};
    CHECK(oracle::max_abs_diff(partial_trace(psi, keep).matrix(), rho.matrix()) < 1e-10);
  }
}

TEST_CASE("purification is deterministic and phase fixed") {
  const auto rho = random_state({2, 2}, 77, 3);
  const auto a = purify(rho), b = purify(rho);
  CHECK(a.amplitudes() == b.amplitudes());
  // Ancilla marginal carries the eigenvalues in descending order on its diagonal.
  const std::size_t keep_c[] = {2};
  const auto rc = partial_trace(a, keep_c);
  for (Eigen::Index k = 0; k + 1 < rc.matrix().rows(); ++k) CHECK(rc.matrix()(k, k).real() >= rc.matrix()(k + 1, k + 1).real());
}

TEST_CASE("tolerance names") {
  Tolerances t;
  CHECK(t.set("eig", 1e-6));
  CHECK(t.eig == 1e-6);
  CHECK(t.set("max_dimension", 64));
  CHECK(t.max_dimension == 64);
  CHECK_FALSE(t.set("nope", 1.0));
}
