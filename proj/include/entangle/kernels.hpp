#pragma once

// Index-permutation kernels behind the linalg layer. Each kernel exists twice:
// an OpenMP version (namespace kernels) used by the library and a plain serial
// loop (namespace kernels::reference) kept for testing and benchmarking. Both
// compute every output entry with the same summation order, so their results
// agree bit for bit.

#include <cstddef>
#include <span>

#include "entangle/linalg.hpp"

namespace entangle::kernels {

/// Below this many output entries the parallel kernels run serially.
inline constexpr std::size_t kParallelThreshold = 4096;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t subsystem);
ComplexVector permute(const ComplexVector& v, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order);
ComplexMatrix permute(const ComplexMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order);

namespace reference {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::size_t subsystem);
ComplexVector permute(const ComplexVector& v, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order);
ComplexMatrix permute(const ComplexMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> order);

}  // namespace reference

}  // namespace entangle::kernels
