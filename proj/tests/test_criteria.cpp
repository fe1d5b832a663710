#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entangle/criteria.hpp"
#include "entangle/states.hpp"
#include "oracle.hpp"

using namespace entangle;
using C = CriterionClass;

namespace {

QuantumState cut(const PureVector& psi, std::size_t i, std::size_t j) {
  const std::size_t keep[] = {i, j};
  return partial_trace(psi, keep);
}

void check_all(const ClassificationReport& r, Truth t) {
  for (auto c : kAllCriteria) {
    CAPTURE(to_string(c));
    CHECK(r.value(c) == t);
  }
}

}  // namespace

TEST_CASE("class names round trip") {
  for (auto c : kAllCriteria) CHECK(criterion_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(criterion_from_string("SEPARABLE"), UsageError);
  CHECK(implication_edges().size() == 9);
}

TEST_CASE("antisymmetric marginal: NPT, reduction holds, isospectral") {
  const auto rho = cut(states::antisymmetric_tripartite(), 0, 1);
  const auto r = classify(rho);
  CHECK(r.ppt_min_eigenvalue == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(r[C::Ppt].no());
  CHECK(r[C::Ppt].witness.at("min_eigenvalue") == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(r[C::Red].yes());
  CHECK(r[C::Red].witness.at("min_eigenvalue") >= -1e-9);
  CHECK(r[C::Sep].no());
  CHECK(r[C::Sep].rule == "npt");
  CHECK(r[C::Und].no());
  CHECK(r[C::Und].rule == "prop4_contradiction");
  CHECK(r[C::Maj].yes());
  CHECK(r[C::Cen].yes());
  // Coherent information is zero both ways, so one-way distillability stays open.
  CHECK(r[C::UndOneWay].unknown());
  CHECK_FALSE(r[C::UndOneWay].inconclusive.empty());
  const auto ref = oracle::eigenvalues(rho.matrix());
  CHECK(ref.front() == doctest::Approx(1.0 / 3.0));
  CHECK(r.spec_ab.max() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(spectrum_distance(r.spec_ab, r.spec_a) < 1e-8);
  CHECK(spectrum_distance(r.spec_a, r.spec_b) < 1e-8);
}

TEST_CASE("GHZ marginals: all nine Yes, separable via the low-dimension path") {
  const auto psi = states::ghz3();
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
    const auto r = classify(cut(psi, i, j));
    check_all(r, Truth::Yes);
    CHECK(r[C::Sep].rule == "low_dimension_ppt");
  }
}

TEST_CASE("Bell state: all nine No") {
  const auto r = classify(states::bell().projector());
  check_all(r, Truth::No);
  CHECK(r[C::Und].rule == "rank_deficit");
  CHECK(r[C::UndOneWay].rule == "hashing_ab");
}

TEST_CASE("locking state: CEN_RIGHT without MAJ, one-way distillable by certificate") {
  for (std::size_t d : {2u, 3u}) {
    const auto lock = states::horodecki_locking(d);
    const auto r = classify(lock.state, lock.certificate);
    CHECK(r[C::CenRight].yes());
    CHECK(r[C::CenLeft].yes());
    CHECK(r[C::Maj].no());
    CHECK(r[C::UndOneWay].no());
    CHECK(r[C::UndOneWay].provenance == Provenance::Certificate);
    CHECK(r[C::Ppt].witness.at("min_eigenvalue") == doctest::Approx(-1.0 / (2.0 * double(d))).epsilon(1e-12));
    CHECK(r[C::Maj].witness.count("violated_prefix_a") == 1);
  }
  // For d = 2 the C marginal I/2 still majorizes the joint spectrum; only A breaks it.
  const auto lock2 = states::horodecki_locking(2);
  const auto r2 = classify(lock2.state, lock2.certificate);
  CHECK(r2[C::Maj].witness.count("violated_prefix_b") == 0);
  CHECK(r2[C::Maj].witness.at("min_gap_b") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("locking purification AB marginal is distillable by rank deficit") {
  const auto lp = states::locking_purification(2);
  const auto r = classify(cut(lp.psi, 0, 1), lp.certs.ab);
  CHECK(r[C::Und].no());
  CHECK(r.rank_ab == 2);
  CHECK(r.rank_b == 5);
}

TEST_CASE("tiles state: PPT Yes, certificate forces SEP No") {
  const auto tiles = states::tiles_bound_entangled();
  const auto bare = classify(tiles.state);
  CHECK(bare[C::Ppt].yes());
  CHECK(bare[C::Sep].unknown());
  CHECK(bare[C::Und].yes());
  const auto r = classify(tiles.state, tiles.certificate);
  CHECK(r[C::Sep].no());
  CHECK(r[C::Sep].provenance == Provenance::Certificate);
  CHECK(r.certificate == "KnownEntangled");
  // Certificates only resolve Unknowns.
  for (auto c : kAllCriteria)
    if (!bare[c].unknown()) CHECK(bare.value(c) == r.value(c));
}

TEST_CASE("separable decomposition certificate gives SEP Yes") {
  const auto sep = states::random_separable(3, 3, 4, Seed{3});
  const auto bare = classify(sep.state);
  const auto r = classify(sep.state, sep.certificate);
  CHECK(r[C::Sep].yes());
  CHECK(r[C::Sep].witness.at("reconstruction_error") <= 1e-12);
  for (auto c : kAllCriteria)
    if (!bare[c].unknown()) CHECK(bare.value(c) == r.value(c));
  check_all(r, Truth::Yes);
}

TEST_CASE("hashing rules in both directions") {
  // Pure entangled states have S(AB) = 0 < S(A) = S(B).
  const auto psi = states::random_pure({2, 3}, Seed{8});
  const auto data = analyze(psi.projector());
  const auto und = check_und(psi.projector(), {});
  CHECK(und.no());
  CHECK(und.witness.at("coherent_information_ab") > 0);
  CHECK(und.witness.at("coherent_information_ba") > 0);
  CHECK(check_und_oneway(psi.projector(), {}).no());
  CHECK(data.rank_ab == 1);
}

TEST_CASE("contradictory certificate raises ConsistencyError") {
  // A 2x2 PPT state is separable; claiming it entangled contradicts the low-dimension rule.
  const auto rho = cut(states::ghz3(), 0, 1);
  CHECK_THROWS_AS(classify(rho, StateCertificate::known_entangled()), ConsistencyError);
  try {
    classify(rho, StateCertificate::known_entangled());
  } catch (const ConsistencyError& e) {
    CHECK(e.first().find("SEP=Yes") != std::string::npos);
    CHECK(e.second().find("SEP=No") != std::string::npos);
  }
  // A one-way distillable claim on a separable state contradicts PPT => UND.
  CHECK_THROWS_AS(classify(rho, StateCertificate::known_one_way_distillable()), ConsistencyError);
}

TEST_CASE("propagation marks inferred verdicts") {
  // Reduction holds on the antisymmetric marginal, and RED => MAJ => CEN.
  const auto r = classify(cut(states::antisymmetric_tripartite(), 0, 1));
  for (const auto& e : implication_edges()) {
    if (r.value(e.from) == Truth::Yes) CHECK(r.value(e.to) == Truth::Yes);
    if (r.value(e.to) == Truth::No) CHECK(r.value(e.from) == Truth::No);
  }
  CHECK(chain_violations(r).empty());
}

TEST_CASE("1000 random states: sound chains, no consistency errors") {
  const std::array<std::array<std::size_t, 2>, 3> shapes = {{{2, 2}, {2, 3}, {3, 3}}};
  std::size_t errors = 0, violations = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto [da, db] = shapes[i % 3];
    const Seed seed = derive_seed(Seed{2024}, i);
    try {
      ClassificationReport r = [&] {
        if (i % 4 == 3) {
          const auto sep = states::random_separable(da, db, 1 + seed.value % (da * db), seed);
          return classify(sep.state, sep.certificate);
        }
        const std::size_t rank = 1 + seed.value % (da * db);
        return classify(QuantumState(states::random_density(da * db, rank, seed).matrix(), {da, db}));
      }();
      violations += chain_violations(r).size();
      for (auto c : kAllCriteria) {
        const auto& v = r[c];
        if (v.unknown()) {
          CHECK_FALSE(v.inconclusive.empty());
        } else {
          CHECK_FALSE(v.rule.empty());
        }
      }
      // PPT is always decided, and entropy classes are total.
      CHECK_FALSE(r[C::Ppt].unknown());
      CHECK_FALSE(r[C::CenLeft].unknown());
      CHECK_FALSE(r[C::CenRight].unknown());
      CHECK_FALSE(r[C::Maj].unknown());
      CHECK_FALSE(r[C::Red].unknown());
    } catch (const ConsistencyError&) {
      ++errors;
    }
  }
  CHECK(errors == 0);
  CHECK(violations == 0);
}

TEST_CASE("exchanging the parties mirrors the verdicts") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Seed seed{i + 1};
    const std::size_t da = 2 + i % 2, db = 2 + (i / 2) % 2;
    const auto rho = QuantumState(states::random_density(da * db, 1 + i % (da * db), seed).matrix(), {da, db});
    const auto r = classify(rho);
    const auto s = classify(swap_parties(rho));
    for (auto c : {C::Sep, C::Ppt, C::Und, C::Red, C::Maj, C::Cen}) {
      CAPTURE(to_string(c));
      CHECK(r.value(c) == s.value(c));
    }
    CHECK(r.value(C::CenLeft) == s.value(C::CenRight));
    CHECK(r.value(C::CenRight) == s.value(C::CenLeft));
    CHECK(r.ppt_min_eigenvalue == doctest::Approx(s.ppt_min_eigenvalue).epsilon(1e-9));
  }
}

TEST_CASE("PPT verdict agrees with the oracle partial transpose") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t da = 2 + i % 2, db = 2 + (i / 2) % 2;
    const auto rho = QuantumState(states::random_density(da * db, 1 + i % (da * db), Seed{i + 500}).matrix(), {da, db});
    const auto ev = oracle::eigenvalues(oracle::partial_transpose(rho.matrix(), {da, db}, 1));
    CHECK(check_ppt(rho).witness.at("min_eigenvalue") == doctest::Approx(ev.back()).epsilon(1e-9));
    CHECK(check_ppt(rho).yes() == (ev.back() >= -1e-9));
  }
}

TEST_CASE("entropy verdicts agree with oracle entropies") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto rho = QuantumState(states::random_density(6, 1 + i % 6, Seed{i + 900}).matrix(), {2, 3});
    const double sab = oracle::entropy_bits(oracle::eigenvalues(rho.matrix()));
    const double sa = oracle::entropy_bits(oracle::eigenvalues(oracle::partial_trace(rho.matrix(), {2, 3}, {0})));
    const double sb = oracle::entropy_bits(oracle::eigenvalues(oracle::partial_trace(rho.matrix(), {2, 3}, {1})));
    const auto cen = check_cen(rho);
    CHECK(cen.left.witness.at("entropy_gap") == doctest::Approx(sab - sa).epsilon(1e-8));
    CHECK(cen.right.witness.at("entropy_gap") == doctest::Approx(sab - sb).epsilon(1e-8));
    CHECK(cen.left.yes() == (sab - sa >= -1e-9));
  }
}

TEST_CASE("criteria reject non-bipartite input") {
  CHECK_THROWS_AS(classify(states::ghz3().projector()), UsageError);
}
