#pragma once

// Named states, seeded random ensembles, and ground-truth certificates.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "entangle/linalg.hpp"

namespace entangle {

struct Seed {
  std::uint64_t value = 0;
};

/// Independent per-sample seed: splitmix64 of (seed, index).
Seed derive_seed(Seed seed, std::uint64_t index);

struct SeparableTerm {
  double weight;
  ComplexMatrix a;
  ComplexMatrix b;
};

/// Ground truth a constructor knows about its output. Certificates are trusted
/// inputs to the classifier.
struct StateCertificate {
  enum class Kind { None, SeparableDecomposition, KnownEntangled, KnownOneWayDistillable };

  Kind kind = Kind::None;
  std::vector<SeparableTerm> terms;  // SeparableDecomposition only

  static StateCertificate none() { return {}; }
  static StateCertificate known_entangled() { return {Kind::KnownEntangled, {}}; }
  static StateCertificate known_one_way_distillable() { return {Kind::KnownOneWayDistillable, {}}; }
  static StateCertificate separable(std::vector<SeparableTerm> terms) {
    return {Kind::SeparableDecomposition, std::move(terms)};
  }

  /// Sum_k p_k a_k (x) b_k; only meaningful for SeparableDecomposition.
  ComplexMatrix reconstruct() const;
  /// Max entry error of the reconstruction against rho; weights must be a
  /// probability vector. Returns +inf when the certificate has no terms.
  double reconstruction_error(const QuantumState& rho) const;
};

const char* to_string(StateCertificate::Kind kind);

struct CertifiedState {
  QuantumState state;
  StateCertificate certificate;
};

/// Certificates for the three two-party marginals of a tripartite pure state.
struct MarginalCertificates {
  StateCertificate ab;
  StateCertificate ac;
  StateCertificate bc;
};

struct CertifiedPure {
  PureVector psi;
  MarginalCertificates certs;
};

namespace states {

/// (1/sqrt d) sum_i |ii>.
PureVector max_entangled(std::size_t d);
PureVector bell();
/// (|000> + |111>)/sqrt 2.
PureVector ghz3();

/// Locking state on A = A1 A2 (merged, dimension 2d) and C (dimension d):
/// 1/2 |0><0| (x) |psi+><psi+| + 1/2 |1><1| (x) I/d^2.
CertifiedState horodecki_locking(std::size_t d);
/// Purification of the locking state relabelled so the locking state is the
/// AC marginal: dims (2d, d^2+1, d).
CertifiedPure locking_purification(std::size_t d);

/// Totally antisymmetric state on 3 x 3 x 3.
PureVector antisymmetric_tripartite();

/// The five Tiles unextendible-product-basis vectors, each of length 9.
std::array<ComplexVector, 5> tiles_basis();
/// Normalised projector onto the complement of the Tiles basis (PPT entangled).
CertifiedState tiles_bound_entangled();
/// Purification with the Tiles state as the AB marginal: dims (3, 3, 4).
CertifiedPure tiles_purification();

PureVector random_pure(const Dims& dims, Seed seed);
QuantumState random_density(std::size_t dim, std::size_t rank, Seed seed);
/// Mixture of `terms` random pure product states with Dirichlet(1,...,1) weights.
CertifiedState random_separable(std::size_t da, std::size_t db, std::size_t terms, Seed seed);
/// Haar unitary via QR of a Ginibre matrix with the phase fix.
ComplexMatrix random_unitary(std::size_t d, Seed seed);

/// Applies U_0 (x) U_1 (x) ... to psi; one unitary per subsystem.
PureVector apply_local_unitaries(const PureVector& psi, const std::vector<ComplexMatrix>& unitaries);

struct Marginals {
  QuantumState ab, ac, bc, a, b, c;
};
/// All six marginals of a three-party pure state.
Marginals reduce_all(const PureVector& psi, const Tolerances& tol = {});

/// Registry names: bell, maxent:d, ghz3, locking:d, antisym3, tiles.
struct Builtin {
  std::string name;
  // Exactly one of these is set.
  std::optional<CertifiedState> mixed;
  std::optional<CertifiedPure> pure;
};
Builtin builtin(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace states

}  // namespace entangle
