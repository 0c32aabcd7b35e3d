#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qdiscord/jacobi.hpp"
#include "support/random_states.hpp"

using namespace qdiscord;
using namespace qdiscord::kernels;

namespace {

template <typename T>
double reconstruction_residual(const Matrix<T>& m, const JacobiResult<T>& r) {
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T acc{};
      for (std::size_t k = 0; k < n; ++k) {
        if constexpr (std::is_same_v<T, Complex>)
          acc += r.vectors(i, k) * r.values[k] * std::conj(r.vectors(j, k));
        else
          acc += r.vectors(i, k) * r.values[k] * r.vectors(j, k);
      }
      worst = std::max(worst, std::abs(acc - m(i, j)));
    }
  return worst;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("cyclic and round-robin orderings agree on random Hermitian matrices") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 16u, 33u, 100u}) {
    const CMatrix m = testing::random_hermitian(rng, n);
    const auto serial = jacobi_cyclic(m);
    const auto parallel = jacobi_round_robin(m);
    CHECK(serial.off_norm <= 1e-13 * frobenius_norm(m) + 1e-300);
    CHECK(parallel.off_norm <= 1e-13 * frobenius_norm(m) + 1e-300);
    const auto a = sorted(serial.values);
    const auto b = sorted(parallel.values);
    for (std::size_t k = 0; k < n; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-11));
    CHECK(reconstruction_residual(m, serial) < 1e-10 * std::max(1.0, frobenius_norm(m)));
    CHECK(reconstruction_residual(m, parallel) < 1e-10 * std::max(1.0, frobenius_norm(m)));
  }
}

TEST_CASE("real symmetric kernels reconstruct the input") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {2u, 5u, 64u, 130u}) {
    const RMatrix m = testing::random_symmetric(rng, n);
    const auto serial = jacobi_cyclic(m);
    const auto parallel = jacobi_round_robin(m);
    CHECK(reconstruction_residual(m, serial) < 1e-10 * n);
    CHECK(reconstruction_residual(m, parallel) < 1e-10 * n);
    const auto a = sorted(serial.values);
    const auto b = sorted(parallel.values);
    for (std::size_t k = 0; k < n; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-11));
  }
}

TEST_CASE("diagonal input needs no sweeps") {
  const RMatrix m{{3.0, 0.0}, {0.0, -1.0}};
  const auto r = jacobi_round_robin(m);
  CHECK(r.sweeps == 0);
  CHECK(r.values[0] == 3.0);
  CHECK(r.values[1] == -1.0);
}

TEST_CASE("eigenvectors can be skipped") {
  std::mt19937_64 rng(2);
  JacobiOptions options;
  options.want_vectors = false;
  const auto r = jacobi_round_robin(testing::random_hermitian(rng, 6), options);
  CHECK(r.vectors.rows() == 0);
  CHECK(r.values.size() == 6);
}

TEST_CASE("non-square input is rejected") {
  CHECK_THROWS_AS(jacobi_cyclic(RMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(jacobi_round_robin(CMatrix(3, 2)), DimensionError);
}
