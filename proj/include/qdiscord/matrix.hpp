#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qdiscord/errors.hpp"

namespace qdiscord {

using Complex = std::complex<double>;

// Dense row-major matrix. Value semantics; no expression templates.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const T> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  T* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
  const T* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(T scalar);

  T trace() const;
  Matrix adjoint() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using CMatrix = Matrix<Complex>;
using RMatrix = Matrix<double>;

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  a += b;
  return a;
}
template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
  a -= b;
  return a;
}
template <typename T>
Matrix<T> operator*(Matrix<T> a, T s) {
  a *= s;
  return a;
}
template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);

// Kronecker product a ⊗ b.
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b);

// Largest |a_ij - conj(a_ji)|.
double hermiticity_defect(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
bool is_real(const CMatrix& m);
RMatrix real_part(const CMatrix& m);
CMatrix to_complex(const RMatrix& m);

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

}  // namespace qdiscord
