#include "qdiscord/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace qdiscord {

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::diagonal(std::span<const T> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

template <typename T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

template <typename T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

template <typename T>
Matrix<T>& Matrix<T>::operator*=(T scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

template <typename T>
T Matrix<T>::trace() const {
  if (!square()) throw DimensionError("trace of a non-square matrix");
  T t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

template <typename T>
Matrix<T> Matrix<T>::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if constexpr (std::is_same_v<T, Complex>)
        out(j, i) = std::conj((*this)(i, j));
      else
        out(j, i) = (*this)(i, j);
    }
  return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T* ci = c.row(i);
    const T* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = ai[k];
      if (aik == T{}) continue;
      const T* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

template class Matrix<double>;
template class Matrix<Complex>;
template Matrix<double> operator*(const Matrix<double>&, const Matrix<double>&);
template Matrix<Complex> operator*(const Matrix<Complex>&, const Matrix<Complex>&);
template Matrix<double> kron(const Matrix<double>&, const Matrix<double>&);
template Matrix<Complex> kron(const Matrix<Complex>&, const Matrix<Complex>&);

double hermiticity_defect(const CMatrix& m) {
  if (!m.square()) throw DimensionError("hermiticity check on a non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

bool is_real(const CMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(),
                     [](const Complex& v) { return v.imag() == 0.0; });
}

RMatrix real_part(const CMatrix& m) {
  RMatrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = m.data()[k].real();
  return out;
}

CMatrix to_complex(const RMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = m.data()[k];
  return out;
}

namespace pauli {
CMatrix identity() { return CMatrix{{1.0, 0.0}, {0.0, 1.0}}; }
CMatrix x() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix y() { return CMatrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
CMatrix z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace qdiscord
