#pragma once

// Stinespring-isometry channels: application, complementary channel, Choi
// state, coherent information, and a sampled lower bound on the one-shot
// quantum capacity.

#include <vector>

#include "entangle/cmoe.hpp"
#include "entangle/criteria.hpp"
#include "entangle/linalg.hpp"
#include "entangle/states.hpp"

namespace entangle {

/// Isometry V from A into B (x) C, stored as a (d_b * d_c) x d_a matrix whose
/// row index is b * d_c + c.
class ChannelIsometry {
 public:
  ChannelIsometry(ComplexMatrix matrix, std::size_t d_a, std::size_t d_b, std::size_t d_c,
                  const Tolerances& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t d_a() const { return d_a_; }
  std::size_t d_b() const { return d_b_; }
  std::size_t d_c() const { return d_c_; }

  /// ||V^dagger V - I|| (max entry).
  double isometry_defect() const;

 private:
  ComplexMatrix matrix_;
  std::size_t d_a_, d_b_, d_c_;
};

namespace channels {

ChannelIsometry identity(std::size_t d);
/// rho -> I/d, with d^2 environment states.
ChannelIsometry completely_depolarizing(std::size_t d);
/// |psi> -> |0>_B |psi>_C.
ChannelIsometry swap_to_environment(std::size_t d);
/// |i> -> |i>_B |i>_C.
ChannelIsometry dephasing(std::size_t d);
ChannelIsometry random_isometry(std::size_t d_a, std::size_t d_b, std::size_t d_c, Seed seed);

/// V = sum_k K_k (x) |k>_C.
ChannelIsometry from_kraus(const std::vector<ComplexMatrix>& kraus, const Tolerances& tol = {});
/// Channel whose Choi state is `choi` (dims (d_a, d_b)); requires the A
/// marginal of `choi` to be I/d_a. The environment has dimension rank(choi).
ChannelIsometry from_choi(const QuantumState& choi, const Tolerances& tol = {});
/// The same isometry with the roles of B and C exchanged.
ChannelIsometry complementary(const ChannelIsometry& v);

/// The Tiles state filtered on A to a maximally mixed A marginal; a PPT
/// entangled Choi state on 3 x 3.
CertifiedState filtered_tiles_choi();

}  // namespace channels

QuantumState apply_channel(const ChannelIsometry& v, const QuantumState& rho, const Tolerances& tol = {});
QuantumState complementary_apply(const ChannelIsometry& v, const QuantumState& rho,
                                 const Tolerances& tol = {});
/// (I (x) E)(|psi+><psi+|) on A (x) B.
QuantumState choi_state(const ChannelIsometry& v, const Tolerances& tol = {});

/// S(rho_B) - S(rho_AB) in bits.
double coherent_information(const QuantumState& rho, const Tolerances& tol = {});
/// max(0, coherent_information).
double hashing_bound(const QuantumState& rho, const Tolerances& tol = {});

/// S(E(rho)) - S(E^c(rho)).
double channel_coherent_information(const ChannelIsometry& v, const QuantumState& rho,
                                    const Tolerances& tol = {});

/// Certified lower bound on the one-shot capacity: the best of the Choi-state
/// coherent information and `samples` sampled inputs (alternating pure and
/// mixed), clamped at zero. Sample i depends only on (seed, i).
double q1_lower_bound_estimate(const ChannelIsometry& v, std::size_t samples, Seed seed,
                               const Tolerances& tol = {});

struct ChannelClassification {
  Verdict ppt_channel;
  Verdict entanglement_breaking;
  double positive_capacity_lower_bound = 0;
  double complementary_lower_bound = 0;
  /// Falsifiable direction of the PPT-channel statement: a PPT channel that
  /// is not entanglement breaking must have a complementary channel with
  /// positive coherent information.
  ConclusionStatus corollary = ConclusionStatus::Vacuous;
};

ChannelClassification classify_channel(const ChannelIsometry& v, const StateCertificate& choi_cert = {},
                                       std::size_t samples = 64, Seed seed = {},
                                       const Tolerances& tol = {});

}  // namespace entangle
