#pragma once

// Test-only generators for random matrices and states.

#include <cmath>
#include <random>
#include <vector>

#include "qdiscord/hermitian.hpp"

namespace qdiscord::testing {

inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v(g(rng), g(rng));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

inline RMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = g(rng);
  return m;
}

// rho = G G† / tr(G G†) with complex Gaussian G of the given rank.
inline DensityMatrix random_density(std::mt19937_64& rng, std::vector<std::size_t> dims,
                                    std::size_t rank = 0) {
  std::size_t d = 1;
  for (auto k : dims) d *= k;
  if (rank == 0) rank = d;
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(d, rank);
  for (auto& v : a.data()) v = Complex(g(rng), g(rng));
  CMatrix m = a * a.adjoint();
  const double tr = m.trace().real();
  m *= Complex(1.0 / tr);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix(std::move(m), std::move(dims), DensityMatrix::Check::structure);
}

inline CMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  // Gram-Schmidt on a complex Gaussian matrix.
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix u(n, n);
  for (auto& v : u.data()) v = Complex(g(rng), g(rng));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, j)) * u(i, k);
      for (std::size_t i = 0; i < n; ++i) u(i, k) -= dot * u(i, j);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(u(i, k));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) u(i, k) /= norm;
  }
  return u;
}

inline DensityMatrix conjugate(const DensityMatrix& rho, const CMatrix& u) {
  CMatrix m = u * rho.entries() * u.adjoint();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix(std::move(m), rho.subsystem_dims(), DensityMatrix::Check::structure);
}

}  // namespace qdiscord::testing
