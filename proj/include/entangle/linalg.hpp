#pragma once

// Dense complex-matrix primitives: quantum-state carriers, partial trace and
// transpose, Hermitian spectra, entropy, majorization, rank and purification.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entangle {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

/// Largest total Hilbert-space dimension any operation will build.
inline constexpr std::size_t kDefaultMaxDimension = 4096;

/// Numerical thresholds used across the library. Every comparison against
/// zero, equality of entropies, or rank cut goes through one of these.
struct Tolerances {
  double herm = 1e-9;   // max |m - m^dagger| entry
  double psd = 1e-9;    // min eigenvalue floor
  double trace = 1e-9;  // |tr - 1|, |norm - 1|
  double eig = 1e-8;    // relative reconstruction / spectrum agreement
  double rank = 1e-8;   // relative to the largest |eigenvalue|
  double maj = 1e-9;    // prefix-sum slack
  double ent = 1e-9;    // entropy comparisons (bits)
  std::size_t max_dimension = kDefaultMaxDimension;

  /// Sets a tolerance by its short name ("herm", "psd", ...). Returns false
  /// for unknown names.
  bool set(const std::string& name, double value);
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix expected to be Hermitian is not.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double asymmetry)
      : Error(what), asymmetry_(asymmetry) {}
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

std::size_t dimension_product(std::span<const std::size_t> dims);

/// Hermitian, PSD, unit-trace density matrix with an ordered subsystem
/// layout. Construction validates and stores the Hermitian part.
class QuantumState {
 public:
  QuantumState(ComplexMatrix matrix, Dims dims, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t parties() const { return dims_.size(); }

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

/// Unit-norm state vector with an ordered subsystem layout.
class PureVector {
 public:
  PureVector(ComplexVector amplitudes, Dims dims, const Tolerances& tol = {});

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  std::size_t parties() const { return dims_.size(); }

  /// |psi><psi| with the same subsystem layout.
  QuantumState projector() const;

 private:
  ComplexVector amplitudes_;
  Dims dims_;
};

/// Real eigenvalues sorted non-increasing.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double max() const { return values.empty() ? 0.0 : values.front(); }
  double min() const { return values.empty() ? 0.0 : values.back(); }
};

struct Eigensystem {
  Spectrum spectrum;
  ComplexMatrix vectors;  // column k belongs to spectrum.values[k]
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dimension = kDefaultMaxDimension);
QuantumState tensor_product(const QuantumState& a, const QuantumState& b,
                            const Tolerances& tol = {});
PureVector tensor_product(const PureVector& a, const PureVector& b,
                          const Tolerances& tol = {});

/// Reduced state on the subsystems listed in `keep` (strictly increasing).
QuantumState partial_trace(const QuantumState& rho, std::span<const std::size_t> keep,
                           const Tolerances& tol = {});
QuantumState partial_trace(const PureVector& psi, std::span<const std::size_t> keep,
                           const Tolerances& tol = {});

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t subsystem);
ComplexMatrix partial_transpose(const QuantumState& rho, std::size_t subsystem);

/// Reorders subsystems: output subsystem k is input subsystem order[k].
PureVector permute_subsystems(const PureVector& psi, std::span<const std::size_t> order,
                              const Tolerances& tol = {});
QuantumState permute_subsystems(const QuantumState& rho, std::span<const std::size_t> order,
                                const Tolerances& tol = {});
/// Exchanges the two parties of a bipartite state.
QuantumState swap_parties(const QuantumState& rho, const Tolerances& tol = {});

/// Largest |m_ij - conj(m_ji)|.
double hermitian_defect(const ComplexMatrix& m);

Spectrum hermitian_spectrum(const ComplexMatrix& m, const Tolerances& tol = {});
Eigensystem hermitian_eigensystem(const ComplexMatrix& m, const Tolerances& tol = {});

double entropy_of_spectrum(const Spectrum& s, const Tolerances& tol = {});
/// Von Neumann entropy in bits.
double von_neumann_entropy(const QuantumState& rho, const Tolerances& tol = {});

struct MajorizationResult {
  bool holds = false;
  /// 1-based length of the first prefix whose sum falls short.
  std::optional<std::size_t> violated_prefix;
  /// min_k (prefix_p(k) - prefix_q(k)); negative when violated.
  double min_gap = 0.0;

  explicit operator bool() const { return holds; }
};

/// True iff p majorizes q; the shorter vector is padded with zeros.
MajorizationResult majorizes(const Spectrum& p, const Spectrum& q, const Tolerances& tol = {});

std::size_t numerical_rank(const Spectrum& s, const Tolerances& tol = {});
std::size_t numerical_rank(const ComplexMatrix& m, const Tolerances& tol = {});

/// Max-norm distance between two spectra after zero padding.
double spectrum_distance(const Spectrum& a, const Spectrum& b);

/// Spectral purification sum_i sqrt(l_i) |v_i>|i>, ancilla appended last with
/// dimension equal to the numerical rank. Eigenvalues descending; each v_i has
/// its first nonzero component real positive.
PureVector purify(const QuantumState& rho, const Tolerances& tol = {});

}  // namespace entangle
