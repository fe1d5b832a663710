#include "entangle/kernels.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace entangle::kernels {

namespace {

using Index = Eigen::Index;

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

void require_square(const ComplexMatrix& m, std::span<const std::size_t> dims) {
  if (m.rows() != m.cols()) throw UsageError("matrix is not square");
  if (dimension_product(dims) != static_cast<std::size_t>(m.rows()))
    throw UsageError("subsystem dimensions do not match matrix size");
}

// Offsets of every multi-index over `subsystems` (most significant first)
// into the full row-major index space.
std::vector<std::size_t> offsets(std::span<const std::size_t> dims,
                                 std::span<const std::size_t> strides,
                                 std::span<const std::size_t> subsystems) {
  std::size_t count = 1;
  for (auto s : subsystems) count *= dims[s];
  std::vector<std::size_t> out(count, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    std::size_t off = 0;
    for (std::size_t j = subsystems.size(); j-- > 0;) {
      const auto s = subsystems[j];
      off += (rest % dims[s]) * strides[s];
      rest /= dims[s];
    }
    out[idx] = off;
  }
  return out;
}

struct TraceTables {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

TraceTables trace_tables(const ComplexMatrix& m, std::span<const std::size_t> dims,
                         std::span<const std::size_t> keep) {
  require_square(m, dims);
  std::vector<bool> kept_mask(dims.size(), false);
  for (std::size_t j = 0; j < keep.size(); ++j) {
    if (keep[j] >= dims.size()) throw UsageError("subsystem index out of range");
    if (j > 0 && keep[j] <= keep[j - 1]) throw UsageError("keep set must be strictly increasing");
    kept_mask[keep[j]] = true;
  }
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (!kept_mask[s]) traced.push_back(s);
  const auto strides = strides_of(dims);
  return {offsets(dims, strides, keep), offsets(dims, strides, traced)};
}

std::vector<std::size_t> permutation_table(std::span<const std::size_t> dims,
                                           std::span<const std::size_t> order) {
  if (order.size() != dims.size()) throw UsageError("permutation length does not match subsystem count");
  std::vector<bool> seen(dims.size(), false);
  for (auto s : order) {
    if (s >= dims.size() || seen[s]) throw UsageError("invalid subsystem permutation");
    seen[s] = true;
  }
  // offsets() over `order` enumerates output indices and yields input offsets.
  return offsets(dims, strides_of(dims), order);
}

struct TransposeLayout {
  std::size_t stride;
  std::size_t dim;
};

TransposeLayout transpose_layout(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::size_t subsystem) {
  require_square(m, dims);
  if (subsystem >= dims.size()) throw UsageError("subsystem index out of range");
  return {strides_of(dims)[subsystem], dims[subsystem]};
}

inline void transposed_indices(Index r, Index c, const TransposeLayout& l, Index& r2, Index& c2) {
  const auto s = static_cast<Index>(l.stride);
  const auto d = static_cast<Index>(l.dim);
  const Index dr = (r / s) % d;
  const Index dc = (c / s) % d;
  r2 = r + (dc - dr) * s;
  c2 = c + (dr - dc) * s;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  const Index cols = out.cols();
  const bool par = static_cast<std::size_t>(out.size()) >= kParallelThreshold;
  // Column at a time: storage is column-major.
#pragma omp parallel for schedule(static) if (par)
  for (Index c = 0; c < cols; ++c) {
    const Index j = c / bc, l = c % bc;
    for (Index i = 0; i < ar; ++i) {
      const Complex aij = a(i, j);
      for (Index k = 0; k < br; ++k) out(i * br + k, c) = aij * b(k, l);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const auto tables = trace_tables(m, dims, keep);
  const auto n = static_cast<Index>(tables.kept.size());
  const auto t = tables.traced.size();
  ComplexMatrix out(n, n);
  const bool par = static_cast<std::size_t>(n * n) * t >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < t; ++k)
        acc += m(static_cast<Index>(tables.kept[i] + tables.traced[k]),
                 static_cast<Index>(tables.kept[j] + tables.traced[k]));
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t subsystem) {
  const auto layout = transpose_layout(m, dims, subsystem);
  const Index n = m.rows();
  ComplexMatrix out(n, n);
  const bool par = static_cast<std::size_t>(n * n) >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      Index r2, c2;
      transposed_indices(r, c, layout, r2, c2);
      out(r, c) = m(r2, c2);
    }
  }
  return out;
}

ComplexVector permute(const ComplexVector& v, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order) {
  if (dimension_product(dims) != static_cast<std::size_t>(v.size()))
    throw UsageError("subsystem dimensions do not match vector size");
  const auto table = permutation_table(dims, order);
  const auto n = static_cast<Index>(table.size());
  ComplexVector out(n);
  const bool par = table.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (Index o = 0; o < n; ++o) out(o) = v(static_cast<Index>(table[o]));
  return out;
}

ComplexMatrix permute(const ComplexMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order) {
  require_square(m, dims);
  const auto table = permutation_table(dims, order);
  const auto n = static_cast<Index>(table.size());
  ComplexMatrix out(n, n);
  const bool par = static_cast<std::size_t>(n * n) >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (par)
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c)
      out(r, c) = m(static_cast<Index>(table[r]), static_cast<Index>(table[c]));
  return out;
}

namespace reference {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const auto tables = trace_tables(m, dims, keep);
  const auto n = static_cast<Index>(tables.kept.size());
  ComplexMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (auto off : tables.traced)
        acc += m(static_cast<Index>(tables.kept[i] + off), static_cast<Index>(tables.kept[j] + off));
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t subsystem) {
  const auto layout = transpose_layout(m, dims, subsystem);
  ComplexMatrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      Index r2, c2;
      transposed_indices(r, c, layout, r2, c2);
      out(r, c) = m(r2, c2);
    }
  }
  return out;
}

ComplexVector permute(const ComplexVector& v, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order) {
  if (dimension_product(dims) != static_cast<std::size_t>(v.size()))
    throw UsageError("subsystem dimensions do not match vector size");
  const auto table = permutation_table(dims, order);
  ComplexVector out(static_cast<Index>(table.size()));
  for (std::size_t o = 0; o < table.size(); ++o)
    out(static_cast<Index>(o)) = v(static_cast<Index>(table[o]));
  return out;
}

ComplexMatrix permute(const ComplexMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order) {
  require_square(m, dims);
  const auto table = permutation_table(dims, order);
  const auto n = static_cast<Index>(table.size());
  ComplexMatrix out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c)
      out(r, c) = m(static_cast<Index>(table[r]), static_cast<Index>(table[c]));
  return out;
}

}  // namespace reference

}  // namespace entangle::kernels
