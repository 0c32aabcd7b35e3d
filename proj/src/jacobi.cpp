#include "qdiscord/jacobi.hpp"

#include <cmath>
#include <cstddef>
#include <type_traits>

namespace qdiscord::kernels {
namespace {

template <typename T>
double abs2(const T& v) {
  if constexpr (std::is_same_v<T, Complex>)
    return std::norm(v);
  else
    return v * v;
}

template <typename T>
T conj_of(const T& v) {
  if constexpr (std::is_same_v<T, Complex>)
    return std::conj(v);
  else
    return v;
}

template <typename T>
double real_of(const T& v) {
  if constexpr (std::is_same_v<T, Complex>)
    return v.real();
  else
    return v;
}

// U restricted to the (p, q) plane is [[c, s], [-s*ph, c*ph]] with
// ph = conj(a_pq)/|a_pq|.
template <typename T>
struct Rotation {
  std::size_t p = 0, q = 0;
  double c = 1.0, s = 0.0;
  T phase = T{1};
  double shift = 0.0;  // t * |a_pq|
  bool active = false;
};

template <typename T>
Rotation<T> make_rotation(const Matrix<T>& a, std::size_t p, std::size_t q, double skip) {
  Rotation<T> r;
  r.p = p;
  r.q = q;
  const T apq = a(p, q);
  const double mag = std::sqrt(abs2(apq));
  if (mag <= skip) return r;
  const double app = real_of(a(p, p));
  const double aqq = real_of(a(q, q));
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  r.c = 1.0 / std::sqrt(1.0 + t * t);
  r.s = t * r.c;
  r.phase = conj_of(apq) / mag;
  r.shift = t * mag;
  r.active = true;
  return r;
}

template <typename T>
inline void rotate_columns(T* row, const Rotation<T>& r) {
  const T xp = row[r.p];
  const T xq = row[r.q];
  row[r.p] = r.c * xp - r.s * r.phase * xq;
  row[r.q] = r.s * xp + r.c * r.phase * xq;
}

template <typename T>
inline void rotate_rows(Matrix<T>& a, const Rotation<T>& r) {
  T* rp = a.row(r.p);
  T* rq = a.row(r.q);
  const T ph = conj_of(r.phase);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const T xp = rp[k];
    const T xq = rq[k];
    rp[k] = r.c * xp - r.s * ph * xq;
    rq[k] = r.s * xp + r.c * ph * xq;
  }
}

template <typename T>
inline void finish_rotation(Matrix<T>& a, const Rotation<T>& r, double app, double aqq) {
  a(r.p, r.q) = T{};
  a(r.q, r.p) = T{};
  a(r.p, r.p) = T(app - r.shift);
  a(r.q, r.q) = T(aqq + r.shift);
}

template <typename T>
double off_diagonal_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += abs2(a(i, j));
  return std::sqrt(s);
}

template <typename T>
double frobenius(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += abs2(v);
  return std::sqrt(s);
}

template <typename T>
JacobiResult<T> finish(Matrix<T>& a, Matrix<T>&& v, int sweeps, double off) {
  JacobiResult<T> out;
  out.values.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.values[i] = real_of(a(i, i));
  out.vectors = std::move(v);
  out.sweeps = sweeps;
  out.off_norm = off;
  return out;
}

template <typename T>
void require_square(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("Jacobi eigensolver needs a square matrix");
}

}  // namespace

template <typename T>
JacobiResult<T> jacobi_cyclic(Matrix<T> a, const JacobiOptions& options) {
  require_square(a);
  const std::size_t n = a.rows();
  Matrix<T> v = options.want_vectors ? Matrix<T>::identity(n) : Matrix<T>{};
  const double scale = frobenius(a);
  const double target = options.tolerance * scale;
  const double skip = 1e-300 + 1e-18 * scale;
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > target && sweep < options.max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const auto r = make_rotation(a, p, q, skip);
        if (!r.active) continue;
        const double app = real_of(a(p, p));
        const double aqq = real_of(a(q, q));
        for (std::size_t k = 0; k < n; ++k) rotate_columns(a.row(k), r);
        rotate_rows(a, r);
        finish_rotation(a, r, app, aqq);
        if (options.want_vectors)
          for (std::size_t k = 0; k < n; ++k) rotate_columns(v.row(k), r);
      }
    ++sweep;
    off = off_diagonal_norm(a);
  }
  return finish(a, std::move(v), sweep, off);
}

template <typename T>
JacobiResult<T> jacobi_round_robin(Matrix<T> a, const JacobiOptions& options) {
  require_square(a);
  const std::size_t n = a.rows();
  Matrix<T> v = options.want_vectors ? Matrix<T>::identity(n) : Matrix<T>{};
  const double scale = frobenius(a);
  const double target = options.tolerance * scale;
  const double skip = 1e-300 + 1e-18 * scale;
  const bool parallel = n >= 96;

  // Tournament schedule over m players (one dummy when n is odd).
  const std::size_t m = n + (n % 2);
  std::vector<std::size_t> seat(m);
  for (std::size_t i = 0; i < m; ++i) seat[i] = i;

  std::vector<Rotation<T>> round;
  std::vector<double> diag_p, diag_q;
  round.reserve(m / 2);

  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > target && sweep < options.max_sweeps && n > 1) {
    for (std::size_t k = 0; k + 1 < m; ++k) {
      round.clear();
      diag_p.clear();
      diag_q.clear();
      for (std::size_t i = 0; i < m / 2; ++i) {
        std::size_t p = seat[i];
        std::size_t q = seat[m - 1 - i];
        if (p >= n || q >= n) continue;
        if (p > q) std::swap(p, q);
        auto r = make_rotation(a, p, q, skip);
        if (!r.active) continue;
        round.push_back(r);
        diag_p.push_back(real_of(a(p, p)));
        diag_q.push_back(real_of(a(q, q)));
      }
      const auto count = static_cast<std::ptrdiff_t>(round.size());
      if (count > 0) {
#pragma omp parallel for schedule(static) if (parallel)
        for (std::ptrdiff_t row = 0; row < static_cast<std::ptrdiff_t>(n); ++row)
          for (const auto& r : round) rotate_columns(a.row(row), r);
#pragma omp parallel for schedule(static) if (parallel)
        for (std::ptrdiff_t j = 0; j < count; ++j) rotate_rows(a, round[j]);
        for (std::ptrdiff_t j = 0; j < count; ++j)
          finish_rotation(a, round[j], diag_p[j], diag_q[j]);
        if (options.want_vectors) {
#pragma omp parallel for schedule(static) if (parallel)
          for (std::ptrdiff_t row = 0; row < static_cast<std::ptrdiff_t>(n); ++row)
            for (const auto& r : round) rotate_columns(v.row(row), r);
        }
      }
      // Rotate every seat except the first.
      const std::size_t last = seat[m - 1];
      for (std::size_t i = m - 1; i > 1; --i) seat[i] = seat[i - 1];
      seat[1] = last;
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }
  return finish(a, std::move(v), sweep, off);
}

template JacobiResult<double> jacobi_cyclic(RMatrix, const JacobiOptions&);
template JacobiResult<Complex> jacobi_cyclic(CMatrix, const JacobiOptions&);
template JacobiResult<double> jacobi_round_robin(RMatrix, const JacobiOptions&);
template JacobiResult<Complex> jacobi_round_robin(CMatrix, const JacobiOptions&);

}  // namespace qdiscord::kernels
