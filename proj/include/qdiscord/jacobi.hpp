#pragma once

#include <vector>

#include "qdiscord/matrix.hpp"

// Two-sided Jacobi eigenvalue kernels for Hermitian (or real symmetric)
// matrices.
//
// jacobi_cyclic is the serial reference: rotations in row-cyclic order,
// each applied as soon as it is computed. jacobi_round_robin uses the
// tournament ordering: every round consists of n/2 disjoint (p, q) pairs
// whose rotations commute, so their parameters are computed up front and
// the column and row updates run as OpenMP loops. Both converge when the
// off-diagonal Frobenius norm drops below tolerance * ||A||_F.
namespace qdiscord::kernels {

struct JacobiOptions {
  double tolerance = 1e-13;
  int max_sweeps = 60;
  bool want_vectors = true;
};

template <typename T>
struct JacobiResult {
  std::vector<double> values;  // diagonal after convergence, unsorted
  Matrix<T> vectors;           // columns are eigenvectors (empty if not requested)
  int sweeps = 0;
  double off_norm = 0.0;  // final off-diagonal Frobenius norm
};

template <typename T>
JacobiResult<T> jacobi_cyclic(Matrix<T> a, const JacobiOptions& options = {});

template <typename T>
JacobiResult<T> jacobi_round_robin(Matrix<T> a, const JacobiOptions& options = {});

extern template JacobiResult<double> jacobi_cyclic(RMatrix, const JacobiOptions&);
extern template JacobiResult<Complex> jacobi_cyclic(CMatrix, const JacobiOptions&);
extern template JacobiResult<double> jacobi_round_robin(RMatrix, const JacobiOptions&);
extern template JacobiResult<Complex> jacobi_round_robin(CMatrix, const JacobiOptions&);

}  // namespace qdiscord::kernels
