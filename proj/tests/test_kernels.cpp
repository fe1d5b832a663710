#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entangle/kernels.hpp"
#include "entangle/states.hpp"
#include "oracle.hpp"

using namespace entangle;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  return states::random_density(n, n, Seed{seed}).matrix();
}

// Small systems take the serial branch; the large one crosses the parallel
// threshold.
const std::vector<Dims> kShapes = {{2, 3}, {2, 2, 3}, {4, 4, 5}};

}  // namespace

TEST_CASE("parallel kernels are bitwise equal to the serial reference") {
  for (const auto& dims : kShapes) {
    const std::size_t n = dimension_product(dims);
    const ComplexMatrix m = random_matrix(n, n);

    for (std::size_t sub = 0; sub < dims.size(); ++sub)
      CHECK(kernels::partial_transpose(m, dims, sub) == kernels::reference::partial_transpose(m, dims, sub));

    const std::vector<std::size_t> keep = {0, dims.size() - 1};
    CHECK(kernels::partial_trace(m, dims, keep) == kernels::reference::partial_trace(m, dims, keep));

    std::vector<std::size_t> order(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) order[k] = dims.size() - 1 - k;
    CHECK(kernels::permute(m, dims, order) == kernels::reference::permute(m, dims, order));
    const ComplexVector v = m.col(0);
    CHECK(kernels::permute(v, dims, order) == kernels::reference::permute(v, dims, order));
  }
  const ComplexMatrix a = random_matrix(9, 1), b = random_matrix(8, 2);
  CHECK(kernels::kron(a, b) == kernels::reference::kron(a, b));
}

TEST_CASE("kernels agree with the index-loop oracle") {
  for (const auto& dims : kShapes) {
    const std::size_t n = dimension_product(dims);
    const ComplexMatrix m = random_matrix(n, n + 100);
    for (std::size_t sub = 0; sub < dims.size(); ++sub)
      CHECK(oracle::max_abs_diff(kernels::partial_transpose(m, dims, sub), oracle::partial_transpose(m, dims, sub)) ==
            0.0);
    const std::vector<std::size_t> keep = {1};
    CHECK(oracle::max_abs_diff(kernels::partial_trace(m, dims, keep), oracle::partial_trace(m, dims, keep)) < 1e-14);
    std::vector<std::size_t> order(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) order[k] = (k + 1) % dims.size();
    CHECK(oracle::max_abs_diff(kernels::permute(m, dims, order), oracle::permute(m, dims, order)) == 0.0);
  }
  const ComplexMatrix a = random_matrix(3, 7), b = random_matrix(4, 8);
  CHECK(oracle::max_abs_diff(kernels::kron(a, b), oracle::kron(a, b)) == 0.0);
}

TEST_CASE("kernels reject malformed arguments") {
  const ComplexMatrix m = ComplexMatrix::Identity(6, 6);
  const Dims wrong = {2, 2};
  const Dims dims = {2, 3};
  const std::vector<std::size_t> keep = {0};
  const std::vector<std::size_t> bad_order = {0, 0};
  CHECK_THROWS_AS(kernels::partial_trace(m, wrong, keep), UsageError);
  CHECK_THROWS_AS(kernels::partial_transpose(m, dims, 2), UsageError);
  CHECK_THROWS_AS(kernels::permute(m, dims, bad_order), UsageError);
}
