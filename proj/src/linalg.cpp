#include "entangle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entangle/kernels.hpp"

namespace entangle {

namespace {

using Index = Eigen::Index;

void check_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) throw InvariantError("matrix has non-finite entries");
}

void check_dims(const Dims& dims, std::size_t size) {
  if (dims.empty()) throw InvariantError("subsystem list is empty");
  for (auto d : dims)
    if (d < 1) throw InvariantError("subsystem dimension must be at least 1");
  if (dimension_product(dims) != size) {
    std::ostringstream os;
    os << "product of subsystem dimensions " << dimension_product(dims) << " != size " << size;
    throw InvariantError(os.str());
  }
}

std::vector<std::size_t> complement(std::size_t parties, std::span<const std::size_t> keep) {
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < parties; ++s)
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) rest.push_back(s);
  return rest;
}

void check_keep(std::size_t parties, std::span<const std::size_t> keep) {
  if (keep.empty()) throw UsageError("keep set is empty");
  for (std::size_t j = 0; j < keep.size(); ++j) {
    if (keep[j] >= parties) throw UsageError("subsystem index out of range");
    if (j > 0 && keep[j] <= keep[j - 1]) throw UsageError("keep set must be strictly increasing");
  }
}

Dims select(const Dims& dims, std::span<const std::size_t> idx) {
  Dims out;
  out.reserve(idx.size());
  for (auto s : idx) out.push_back(dims[s]);
  return out;
}

}  // namespace

bool Tolerances::set(const std::string& name, double value) {
  if (name == "herm") herm = value;
  else if (name == "psd") psd = value;
  else if (name == "trace") trace = value;
  else if (name == "eig") eig = value;
  else if (name == "rank") rank = value;
  else if (name == "maj") maj = value;
  else if (name == "ent") ent = value;
  else if (name == "max_dimension" && value >= 1) max_dimension = static_cast<std::size_t>(value);
  else return false;
  return true;
}

std::size_t dimension_product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

QuantumState::QuantumState(ComplexMatrix matrix, Dims dims, const Tolerances& tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols()) throw InvariantError("density matrix is not square");
  check_dims(dims_, static_cast<std::size_t>(matrix_.rows()));
  if (dim() > tol.max_dimension) throw DimensionError("state dimension exceeds configured maximum");
  check_finite(matrix_);
  const double defect = hermitian_defect(matrix_);
  if (defect > tol.herm) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << defect << ")";
    throw InvariantError(os.str());
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " != 1";
    throw InvariantError(os.str());
  }
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  const auto spec = hermitian_spectrum(matrix_, tol);
  if (spec.min() < -tol.psd) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << spec.min();
    throw InvariantError(os.str());
  }
}

PureVector::PureVector(ComplexVector amplitudes, Dims dims, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  check_dims(dims_, static_cast<std::size_t>(amplitudes_.size()));
  if (dim() > tol.max_dimension * tol.max_dimension)
    throw DimensionError("vector dimension exceeds configured maximum");
  if (!amplitudes_.allFinite()) throw InvariantError("vector has non-finite entries");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "vector norm " << norm << " != 1";
    throw InvariantError(os.str());
  }
}

QuantumState PureVector::projector() const {
  return QuantumState(amplitudes_ * amplitudes_.adjoint(), dims_);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dimension) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dimension || cols > max_dimension)
    throw DimensionError("tensor product dimension exceeds configured maximum");
  return kernels::kron(a, b);
}

QuantumState tensor_product(const QuantumState& a, const QuantumState& b, const Tolerances& tol) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return QuantumState(tensor_product(a.matrix(), b.matrix(), tol.max_dimension), std::move(dims), tol);
}

PureVector tensor_product(const PureVector& a, const PureVector& b, const Tolerances& tol) {
  if (a.dim() * b.dim() > tol.max_dimension * tol.max_dimension)
    throw DimensionError("tensor product dimension exceeds configured maximum");
  ComplexVector out(a.amplitudes().size() * b.amplitudes().size());
  for (Index i = 0; i < a.amplitudes().size(); ++i)
    out.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return PureVector(std::move(out), std::move(dims), tol);
}

QuantumState partial_trace(const QuantumState& rho, std::span<const std::size_t> keep,
                           const Tolerances& tol) {
  check_keep(rho.parties(), keep);
  return QuantumState(kernels::partial_trace(rho.matrix(), rho.dims(), keep),
                      select(rho.dims(), keep), tol);
}

QuantumState partial_trace(const PureVector& psi, std::span<const std::size_t> keep,
                           const Tolerances& tol) {
  check_keep(psi.parties(), keep);
  std::vector<std::size_t> order(keep.begin(), keep.end());
  const auto rest = complement(psi.parties(), keep);
  order.insert(order.end(), rest.begin(), rest.end());
  const ComplexVector v = kernels::permute(psi.amplitudes(), psi.dims(), order);
  const Dims kept = select(psi.dims(), keep);
  const auto k = static_cast<Index>(dimension_product(kept));
  if (static_cast<std::size_t>(k) > tol.max_dimension)
    throw DimensionError("reduced state dimension exceeds configured maximum");
  const Index t = v.size() / k;
  // Kept subsystems are the most significant digits, so v reshapes row-major to k x t.
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      v.data(), k, t);
  return QuantumState(m * m.adjoint(), kept, tol);
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t subsystem) {
  if (dims.size() < 2) throw UsageError("partial transpose needs at least two subsystems");
  return kernels::partial_transpose(m, dims, subsystem);
}

ComplexMatrix partial_transpose(const QuantumState& rho, std::size_t subsystem) {
  return partial_transpose(rho.matrix(), rho.dims(), subsystem);
}

PureVector permute_subsystems(const PureVector& psi, std::span<const std::size_t> order,
                              const Tolerances& tol) {
  auto v = kernels::permute(psi.amplitudes(), psi.dims(), order);
  return PureVector(std::move(v), select(psi.dims(), order), tol);
}

QuantumState permute_subsystems(const QuantumState& rho, std::span<const std::size_t> order,
                                const Tolerances& tol) {
  auto m = kernels::permute(rho.matrix(), rho.dims(), order);
  return QuantumState(std::move(m), select(rho.dims(), order), tol);
}

QuantumState swap_parties(const QuantumState& rho, const Tolerances& tol) {
  if (rho.parties() != 2) throw UsageError("swap_parties needs a bipartite state");
  const std::size_t order[] = {1, 0};
  return permute_subsystems(rho, order, tol);
}

double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw NumericError("matrix is not square", std::numeric_limits<double>::infinity());
  const double defect = hermitian_defect(m);
  if (defect > tol.herm) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << ")";
    throw NumericError(os.str(), defect);
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge", defect);
  // Eigen returns ascending order.
  const Index n = h.rows();
  Eigensystem out;
  out.spectrum.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.spectrum.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

Spectrum hermitian_spectrum(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw NumericError("matrix is not square", std::numeric_limits<double>::infinity());
  const double defect = hermitian_defect(m);
  if (defect > tol.herm) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << ")";
    throw NumericError(os.str(), defect);
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge", defect);
  Spectrum s;
  s.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

double entropy_of_spectrum(const Spectrum& s, const Tolerances& tol) {
  double h = 0.0;
  for (double l : s.values)
    if (l > tol.rank) h -= l * std::log2(l);
  return std::max(0.0, h);
}

double von_neumann_entropy(const QuantumState& rho, const Tolerances& tol) {
  return entropy_of_spectrum(hermitian_spectrum(rho.matrix(), tol), tol);
}

MajorizationResult majorizes(const Spectrum& p, const Spectrum& q, const Tolerances& tol) {
  const std::size_t n = std::max(p.size(), q.size());
  MajorizationResult res;
  res.holds = true;
  res.min_gap = std::numeric_limits<double>::infinity();
  double sp = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sp += k < p.size() ? p.values[k] : 0.0;
    sq += k < q.size() ? q.values[k] : 0.0;
    const double gap = sp - sq;
    res.min_gap = std::min(res.min_gap, gap);
    if (gap < -tol.maj && res.holds) {
      res.holds = false;
      res.violated_prefix = k + 1;
    }
  }
  if (n == 0) res.min_gap = 0.0;
  return res;
}

std::size_t numerical_rank(const Spectrum& s, const Tolerances& tol) {
  double largest = 0.0;
  for (double l : s.values) largest = std::max(largest, std::abs(l));
  if (largest == 0.0) return 0;
  return static_cast<std::size_t>(std::count_if(s.values.begin(), s.values.end(), [&](double l) {
    return std::abs(l) > tol.rank * largest;
  }));
}

std::size_t numerical_rank(const ComplexMatrix& m, const Tolerances& tol) {
  return numerical_rank(hermitian_spectrum(m, tol), tol);
}

double spectrum_distance(const Spectrum& a, const Spectrum& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = k < a.size() ? a.values[k] : 0.0;
    const double y = k < b.size() ? b.values[k] : 0.0;
    worst = std::max(worst, std::abs(x - y));
  }
  return worst;
}

PureVector purify(const QuantumState& rho, const Tolerances& tol) {
  const auto es = hermitian_eigensystem(rho.matrix(), tol);
  const std::size_t r = numerical_rank(es.spectrum, tol);
  const auto n = static_cast<Index>(rho.dim());
  const auto ranks = static_cast<Index>(r);
  ComplexVector psi = ComplexVector::Zero(n * ranks);
  double weight = 0.0;
  for (Index i = 0; i < ranks; ++i) weight += std::max(0.0, es.spectrum.values[static_cast<std::size_t>(i)]);
  for (Index i = 0; i < ranks; ++i) {
    ComplexVector v = es.vectors.col(i);
    for (Index k = 0; k < n; ++k) {
      if (std::abs(v(k)) > 1e-12) {
        v *= std::abs(v(k)) / v(k);
        break;
      }
    }
    // Renormalise over the kept support so dropped noise does not leak out of the trace.
    const double amp = std::sqrt(std::max(0.0, es.spectrum.values[static_cast<std::size_t>(i)]) / weight);
    for (Index k = 0; k < n; ++k) psi(k * ranks + i) = amp * v(k);
  }
  Dims dims = rho.dims();
  dims.push_back(r);
  return PureVector(std::move(psi), std::move(dims), tol);
}

}  // namespace entangle
