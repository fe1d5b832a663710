#include "entangle/states.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "entangle/kernels.hpp"

namespace entangle {

namespace {

using Index = Eigen::Index;

ComplexVector basis_product(std::initializer_list<std::pair<double, std::array<std::size_t, 3>>> terms,
                            std::size_t d) {
  ComplexVector v = ComplexVector::Zero(static_cast<Index>(d * d * d));
  for (const auto& [coef, idx] : terms) v(static_cast<Index>((idx[0] * d + idx[1]) * d + idx[2])) += coef;
  return v;
}

ComplexVector gaussian_vector(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(static_cast<Index>(n));
  for (Index i = 0; i < v.size(); ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = Complex(re, im);
  }
  return v;
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

std::size_t parse_dimension(const std::string& name, const std::string& prefix) {
  const std::string arg = name.substr(prefix.size());
  std::size_t pos = 0;
  unsigned long d = 0;
  try {
    d = std::stoul(arg, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad dimension in builtin name '" + name + "'");
  }
  if (pos != arg.size()) throw UsageError("bad dimension in builtin name '" + name + "'");
  return d;
}

}  // namespace

Seed derive_seed(Seed seed, std::uint64_t index) {
  std::uint64_t z = seed.value + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return Seed{z ^ (z >> 31)};
}

ComplexMatrix StateCertificate::reconstruct() const {
  if (terms.empty()) return {};
  ComplexMatrix out = ComplexMatrix::Zero(terms.front().a.rows() * terms.front().b.rows(),
                                          terms.front().a.cols() * terms.front().b.cols());
  for (const auto& t : terms) out += t.weight * kernels::kron(t.a, t.b);
  return out;
}

double StateCertificate::reconstruction_error(const QuantumState& rho) const {
  if (terms.empty()) return std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.weight < 0.0) return std::numeric_limits<double>::infinity();
    total += t.weight;
  }
  const ComplexMatrix r = reconstruct();
  if (r.rows() != rho.matrix().rows() || r.cols() != rho.matrix().cols())
    return std::numeric_limits<double>::infinity();
  return std::max(std::abs(total - 1.0), (r - rho.matrix()).cwiseAbs().maxCoeff());
}

const char* to_string(StateCertificate::Kind kind) {
  switch (kind) {
    case StateCertificate::Kind::None: return "None";
    case StateCertificate::Kind::SeparableDecomposition: return "SeparableDecomposition";
    case StateCertificate::Kind::KnownEntangled: return "KnownEntangled";
    case StateCertificate::Kind::KnownOneWayDistillable: return "KnownOneWayDistillable";
  }
  return "None";
}

namespace states {

PureVector max_entangled(std::size_t d) {
  if (d < 2) throw UsageError("max_entangled needs d >= 2");
  ComplexVector v = ComplexVector::Zero(static_cast<Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Index>(i * d + i)) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureVector(std::move(v), {d, d});
}

PureVector bell() { return max_entangled(2); }

PureVector ghz3() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return PureVector(std::move(v), {2, 2, 2});
}

CertifiedState horodecki_locking(std::size_t d) {
  if (d < 2) throw UsageError("horodecki_locking needs d >= 2");
  const auto dd = static_cast<Index>(d * d);
  const ComplexVector phi = max_entangled(d).amplitudes();
  ComplexMatrix rho = ComplexMatrix::Zero(2 * dd, 2 * dd);
  rho.topLeftCorner(dd, dd) = 0.5 * phi * phi.adjoint();
  rho.bottomRightCorner(dd, dd) = ComplexMatrix::Identity(dd, dd) * (0.5 / static_cast<double>(dd));
  return {QuantumState(std::move(rho), {2 * d, d}), StateCertificate::known_one_way_distillable()};
}

CertifiedPure locking_purification(std::size_t d) {
  auto locking = horodecki_locking(d);
  // purify() yields (A, C, anc); move the ancilla into the B slot.
  const auto psi = purify(locking.state);
  const std::size_t order[] = {0, 2, 1};
  MarginalCertificates certs;
  certs.ac = locking.certificate;
  return {permute_subsystems(psi, order), std::move(certs)};
}

PureVector antisymmetric_tripartite() {
  const double c = 1.0 / std::sqrt(6.0);
  ComplexVector v = basis_product({{c, {0, 1, 2}},
                                   {-c, {1, 0, 2}},
                                   {-c, {0, 2, 1}},
                                   {c, {2, 0, 1}},
                                   {c, {1, 2, 0}},
                                   {-c, {2, 1, 0}}},
                                  3);
  return PureVector(std::move(v), {3, 3, 3});
}

std::array<ComplexVector, 5> tiles_basis() {
  auto ket = [](std::initializer_list<double> amps) {
    ComplexVector v(3);
    Index i = 0;
    for (double a : amps) v(i++) = a;
    return v;
  };
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  auto prod = [](const ComplexVector& a, const ComplexVector& b) {
    ComplexVector v(9);
    for (Index i = 0; i < 3; ++i) v.segment(3 * i, 3) = a(i) * b;
    return v;
  };
  const ComplexVector e0 = ket({1, 0, 0}), e1 = ket({0, 1, 0}), e2 = ket({0, 0, 1});
  return {prod(e0, ket({s2, -s2, 0})), prod(ket({s2, -s2, 0}), e2), prod(e2, ket({0, s2, -s2})),
          prod(ket({0, s2, -s2}), e0), prod(ket({s3, s3, s3}), ket({s3, s3, s3}))};
}

CertifiedState tiles_bound_entangled() {
  ComplexMatrix p = ComplexMatrix::Identity(9, 9);
  for (const auto& v : tiles_basis()) p -= v * v.adjoint();
  p /= 4.0;
  return {QuantumState(std::move(p), {3, 3}), StateCertificate::known_entangled()};
}

CertifiedPure tiles_purification() {
  auto tiles = tiles_bound_entangled();
  MarginalCertificates certs;
  certs.ab = tiles.certificate;
  return {purify(tiles.state), std::move(certs)};
}

PureVector random_pure(const Dims& dims, Seed seed) {
  const std::size_t n = dimension_product(dims);
  if (n < 2) throw UsageError("random_pure needs total dimension >= 2");
  std::mt19937_64 gen(seed.value);
  ComplexVector v = gaussian_vector(n, gen);
  v /= v.norm();
  return PureVector(std::move(v), dims);
}

QuantumState random_density(std::size_t dim, std::size_t rank, Seed seed) {
  if (rank < 1 || rank > dim) throw UsageError("random_density rank out of range");
  std::mt19937_64 gen(seed.value);
  const ComplexMatrix g = gaussian_matrix(dim, rank, gen);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return QuantumState(std::move(rho), {dim});
}

CertifiedState random_separable(std::size_t da, std::size_t db, std::size_t terms, Seed seed) {
  if (terms < 1) throw UsageError("random_separable needs at least one term");
  std::mt19937_64 gen(seed.value);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(gen));
  std::vector<SeparableTerm> parts;
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Index>(da * db), static_cast<Index>(da * db));
  for (std::size_t k = 0; k < terms; ++k) {
    const auto a = gaussian_vector(da, gen).normalized();
    const auto b = gaussian_vector(db, gen).normalized();
    SeparableTerm t{w[k] / total, a * a.adjoint(), b * b.adjoint()};
    rho += t.weight * kernels::kron(t.a, t.b);
    parts.push_back(std::move(t));
  }
  return {QuantumState(std::move(rho), {da, db}), StateCertificate::separable(std::move(parts))};
}

ComplexMatrix random_unitary(std::size_t d, Seed seed) {
  std::mt19937_64 gen(seed.value);
  const ComplexMatrix g = gaussian_matrix(d, d, gen);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < q.cols(); ++k) {
    const Complex rk = r(k, k);
    if (std::abs(rk) > 0.0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

PureVector apply_local_unitaries(const PureVector& psi, const std::vector<ComplexMatrix>& unitaries) {
  if (unitaries.size() != psi.parties()) throw UsageError("need one unitary per subsystem");
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < unitaries.size(); ++k) {
    if (static_cast<std::size_t>(unitaries[k].rows()) != psi.dims()[k] ||
        unitaries[k].rows() != unitaries[k].cols())
      throw UsageError("local unitary has the wrong dimension");
    u = kernels::kron(u, unitaries[k]);
  }
  ComplexVector v = u * psi.amplitudes();
  v /= v.norm();
  return PureVector(std::move(v), psi.dims());
}

Marginals reduce_all(const PureVector& psi, const Tolerances& tol) {
  if (psi.parties() != 3) throw UsageError("reduce_all needs exactly three subsystems");
  const std::size_t ab[] = {0, 1}, ac[] = {0, 2}, bc[] = {1, 2}, a[] = {0}, b[] = {1}, c[] = {2};
  return {partial_trace(psi, ab, tol), partial_trace(psi, ac, tol), partial_trace(psi, bc, tol),
          partial_trace(psi, a, tol),  partial_trace(psi, b, tol),  partial_trace(psi, c, tol)};
}

Builtin builtin(const std::string& name) {
  if (name == "bell") return {name, std::nullopt, CertifiedPure{bell(), {}}};
  if (name.rfind("maxent:", 0) == 0)
    return {name, std::nullopt, CertifiedPure{max_entangled(parse_dimension(name, "maxent:")), {}}};
  if (name == "ghz3") return {name, std::nullopt, CertifiedPure{ghz3(), {}}};
  if (name.rfind("locking:", 0) == 0)
    return {name, horodecki_locking(parse_dimension(name, "locking:")), std::nullopt};
  if (name == "antisym3") return {name, std::nullopt, CertifiedPure{antisymmetric_tripartite(), {}}};
  if (name == "tiles") return {name, tiles_bound_entangled(), std::nullopt};
  throw UsageError("unknown builtin state '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"bell", "maxent:2", "maxent:3", "maxent:4", "ghz3", "locking:2", "locking:3", "antisym3", "tiles"};
}

}  // namespace states

}  // namespace entangle
