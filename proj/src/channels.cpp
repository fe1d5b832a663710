#include "entangle/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entangle/kernels.hpp"

namespace entangle {

namespace {

using Index = Eigen::Index;

}  // namespace

ChannelIsometry::ChannelIsometry(ComplexMatrix matrix, std::size_t d_a, std::size_t d_b, std::size_t d_c,
                                 const Tolerances& tol)
    : matrix_(std::move(matrix)), d_a_(d_a), d_b_(d_b), d_c_(d_c) {
  if (d_a < 1 || d_b < 1 || d_c < 1) throw InvariantError("channel dimensions must be positive");
  if (static_cast<std::size_t>(matrix_.rows()) != d_b * d_c || static_cast<std::size_t>(matrix_.cols()) != d_a)
    throw InvariantError("isometry shape must be (d_b * d_c) x d_a");
  if (d_b * d_c > tol.max_dimension) throw DimensionError("channel output dimension exceeds configured maximum");
  if (!matrix_.allFinite()) throw InvariantError("isometry has non-finite entries");
  const double defect = isometry_defect();
  if (defect > tol.eig) {
    std::ostringstream os;
    os << "matrix is not an isometry (defect " << defect << ")";
    throw InvariantError(os.str());
  }
}

double ChannelIsometry::isometry_defect() const {
  const auto n = static_cast<Index>(d_a_);
  return (matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

namespace channels {

ChannelIsometry identity(std::size_t d) {
  const auto n = static_cast<Index>(d);
  return ChannelIsometry(ComplexMatrix::Identity(n, n), d, d, 1);
}

ChannelIsometry completely_depolarizing(std::size_t d) {
  std::vector<ComplexMatrix> kraus;
  const auto n = static_cast<Index>(d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      ComplexMatrix k = ComplexMatrix::Zero(n, n);
      k(i, j) = 1.0 / std::sqrt(static_cast<double>(d));
      kraus.push_back(std::move(k));
    }
  }
  return from_kraus(kraus);
}

ChannelIsometry swap_to_environment(std::size_t d) {
  const auto n = static_cast<Index>(d);
  ComplexMatrix v = ComplexMatrix::Zero(n * n, n);
  for (Index a = 0; a < n; ++a) v(a, a) = 1.0;  // row 0 * d + c with c = a
  return ChannelIsometry(std::move(v), d, d, d);
}

ChannelIsometry dephasing(std::size_t d) {
  const auto n = static_cast<Index>(d);
  ComplexMatrix v = ComplexMatrix::Zero(n * n, n);
  for (Index i = 0; i < n; ++i) v(i * n + i, i) = 1.0;
  return ChannelIsometry(std::move(v), d, d, d);
}

ChannelIsometry random_isometry(std::size_t d_a, std::size_t d_b, std::size_t d_c, Seed seed) {
  if (d_a > d_b * d_c) throw UsageError("isometry needs d_a <= d_b * d_c");
  const ComplexMatrix u = states::random_unitary(d_b * d_c, seed);
  return ChannelIsometry(u.leftCols(static_cast<Index>(d_a)), d_a, d_b, d_c);
}

ChannelIsometry from_kraus(const std::vector<ComplexMatrix>& kraus, const Tolerances& tol) {
  if (kraus.empty()) throw UsageError("need at least one Kraus operator");
  const Index db = kraus.front().rows();
  const Index da = kraus.front().cols();
  const auto k = static_cast<Index>(kraus.size());
  ComplexMatrix v(db * k, da);
  for (Index j = 0; j < k; ++j) {
    if (kraus[static_cast<std::size_t>(j)].rows() != db || kraus[static_cast<std::size_t>(j)].cols() != da)
      throw UsageError("Kraus operators must share one shape");
    for (Index b = 0; b < db; ++b) v.row(b * k + j) = kraus[static_cast<std::size_t>(j)].row(b);
  }
  return ChannelIsometry(std::move(v), static_cast<std::size_t>(da), static_cast<std::size_t>(db),
                         kraus.size(), tol);
}

ChannelIsometry from_choi(const QuantumState& choi, const Tolerances& tol) {
  if (choi.parties() != 2) throw UsageError("Choi state must be bipartite");
  const std::size_t da = choi.dims()[0];
  const std::size_t db = choi.dims()[1];
  const std::size_t keep_a[] = {0};
  const auto rho_a = partial_trace(choi, keep_a, tol);
  const auto n = static_cast<Index>(da);
  const double defect =
      (rho_a.matrix() - ComplexMatrix::Identity(n, n) / static_cast<double>(da)).cwiseAbs().maxCoeff();
  if (defect > tol.eig) throw InvariantError("Choi state A marginal is not maximally mixed");
  const auto psi = purify(choi, tol);
  const std::size_t dc = psi.dims().back();
  ComplexMatrix v(static_cast<Index>(db * dc), n);
  const double scale = std::sqrt(static_cast<double>(da));
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t r = 0; r < db * dc; ++r)
      v(static_cast<Index>(r), static_cast<Index>(a)) = scale * psi.amplitudes()(static_cast<Index>(a * db * dc + r));
  return ChannelIsometry(std::move(v), da, db, dc, tol);
}

ChannelIsometry complementary(const ChannelIsometry& v) {
  const auto db = static_cast<Index>(v.d_b());
  const auto dc = static_cast<Index>(v.d_c());
  ComplexMatrix w(v.matrix().rows(), v.matrix().cols());
  for (Index b = 0; b < db; ++b)
    for (Index c = 0; c < dc; ++c) w.row(c * db + b) = v.matrix().row(b * dc + c);
  return ChannelIsometry(std::move(w), v.d_a(), v.d_c(), v.d_b());
}

CertifiedState filtered_tiles_choi() {
  const auto tiles = states::tiles_bound_entangled();
  const std::size_t keep_a[] = {0};
  const auto rho_a = partial_trace(tiles.state, keep_a);
  const auto es = hermitian_eigensystem(rho_a.matrix());
  Eigen::VectorXd inv_sqrt(3);
  for (Index k = 0; k < 3; ++k) inv_sqrt(k) = 1.0 / std::sqrt(es.spectrum.values[static_cast<std::size_t>(k)]);
  const ComplexMatrix f = es.vectors * inv_sqrt.asDiagonal() * es.vectors.adjoint();
  const ComplexMatrix filter = kernels::kron(f, ComplexMatrix::Identity(3, 3));
  ComplexMatrix rho = filter * tiles.state.matrix() * filter.adjoint() / 3.0;
  // Invertible local filtering preserves both PPT and entanglement.
  return {QuantumState(std::move(rho), {3, 3}), StateCertificate::known_entangled()};
}

}  // namespace channels

QuantumState apply_channel(const ChannelIsometry& v, const QuantumState& rho, const Tolerances& tol) {
  if (rho.dim() != v.d_a()) throw UsageError("input state dimension does not match the channel");
  const ComplexMatrix out = v.matrix() * rho.matrix() * v.matrix().adjoint();
  const std::size_t keep_b[] = {0};
  return partial_trace(QuantumState(out, {v.d_b(), v.d_c()}, tol), keep_b, tol);
}

QuantumState complementary_apply(const ChannelIsometry& v, const QuantumState& rho, const Tolerances& tol) {
  if (rho.dim() != v.d_a()) throw UsageError("input state dimension does not match the channel");
  const ComplexMatrix out = v.matrix() * rho.matrix() * v.matrix().adjoint();
  const std::size_t keep_c[] = {1};
  return partial_trace(QuantumState(out, {v.d_b(), v.d_c()}, tol), keep_c, tol);
}

QuantumState choi_state(const ChannelIsometry& v, const Tolerances& tol) {
  const auto da = static_cast<Index>(v.d_a());
  const Index out = v.matrix().rows();
  ComplexVector psi(da * out);
  const double norm = 1.0 / std::sqrt(static_cast<double>(v.d_a()));
  for (Index a = 0; a < da; ++a) psi.segment(a * out, out) = norm * v.matrix().col(a);
  const std::size_t keep_ab[] = {0, 1};
  return partial_trace(PureVector(std::move(psi), {v.d_a(), v.d_b(), v.d_c()}, tol), keep_ab, tol);
}

double coherent_information(const QuantumState& rho, const Tolerances& tol) {
  if (rho.parties() != 2) throw UsageError("coherent information needs a bipartite state");
  const std::size_t keep_b[] = {1};
  return von_neumann_entropy(partial_trace(rho, keep_b, tol), tol) - von_neumann_entropy(rho, tol);
}

double hashing_bound(const QuantumState& rho, const Tolerances& tol) {
  return std::max(0.0, coherent_information(rho, tol));
}

double channel_coherent_information(const ChannelIsometry& v, const QuantumState& rho, const Tolerances& tol) {
  return von_neumann_entropy(apply_channel(v, rho, tol), tol) -
         von_neumann_entropy(complementary_apply(v, rho, tol), tol);
}

double q1_lower_bound_estimate(const ChannelIsometry& v, std::size_t samples, Seed seed, const Tolerances& tol) {
  if (samples < 1) throw UsageError("q1 estimate needs at least one sample");
  double best = std::max(0.0, coherent_information(choi_state(v, tol), tol));
  if (v.d_a() < 2) return best;
  const auto n = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (std::int64_t i = 0; i < n; ++i) {
    const Seed s = derive_seed(seed, static_cast<std::uint64_t>(i));
    double value = 0.0;
    if (i % 2 == 0) {
      value = channel_coherent_information(v, states::random_pure({v.d_a()}, s).projector(), tol);
    } else {
      const std::size_t rank = 1 + derive_seed(s, 0).value % v.d_a();
      value = channel_coherent_information(v, states::random_density(v.d_a(), rank, derive_seed(s, 1)), tol);
    }
    best = std::max(best, value);
  }
  return best;
}

ChannelClassification classify_channel(const ChannelIsometry& v, const StateCertificate& choi_cert,
                                       std::size_t samples, Seed seed, const Tolerances& tol) {
  const auto report = classify(choi_state(v, tol), choi_cert, tol);
  ChannelClassification out;
  out.ppt_channel = report[CriterionClass::Ppt];
  out.entanglement_breaking = report[CriterionClass::Sep];
  out.positive_capacity_lower_bound = q1_lower_bound_estimate(v, samples, seed, tol);
  out.complementary_lower_bound = q1_lower_bound_estimate(channels::complementary(v), samples, seed, tol);
  if (out.ppt_channel.yes() && !out.entanglement_breaking.yes()) {
    if (out.complementary_lower_bound > tol.ent) {
      out.corollary = ConclusionStatus::Verified;
    } else {
      out.corollary = out.entanglement_breaking.no() ? ConclusionStatus::Violated : ConclusionStatus::Undecidable;
    }
  }
  return out;
}

}  // namespace entangle
