#include "qdiscord/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "qdiscord/jacobi.hpp"

namespace qdiscord {
namespace {

void require_hermitian(const CMatrix& m) {
  if (!m.square()) throw DimensionError("expected a square matrix");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << ")";
    throw ValidationError(os.str());
  }
}

CMatrix symmetrized(const CMatrix& m) {
  CMatrix s = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
  }
  return s;
}

std::vector<std::size_t> sort_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

std::vector<double> eigvalsh(const CMatrix& m) {
  require_hermitian(m);
  kernels::JacobiOptions options;
  options.want_vectors = false;
  CMatrix s = symmetrized(m);
  std::vector<double> values = is_real(s)
                                   ? kernels::jacobi_round_robin(real_part(s), options).values
                                   : kernels::jacobi_round_robin(std::move(s), options).values;
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<double> eigvalsh(const RMatrix& m) {
  if (!m.square()) throw DimensionError("expected a square matrix");
  kernels::JacobiOptions options;
  options.want_vectors = false;
  auto values = kernels::jacobi_round_robin(m, options).values;
  std::sort(values.begin(), values.end());
  return values;
}

Eigensystem eigh(const CMatrix& m) {
  require_hermitian(m);
  CMatrix s = symmetrized(m);
  std::vector<double> values;
  CMatrix vectors;
  if (is_real(s)) {
    auto r = kernels::jacobi_round_robin(real_part(s));
    values = std::move(r.values);
    vectors = to_complex(r.vectors);
  } else {
    auto r = kernels::jacobi_round_robin(std::move(s));
    values = std::move(r.values);
    vectors = std::move(r.vectors);
  }
  const auto order = sort_order(values);
  Eigensystem out;
  out.values.resize(values.size());
  out.vectors = CMatrix(vectors.rows(), vectors.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[k] = values[order[k]];
    for (std::size_t i = 0; i < vectors.rows(); ++i) out.vectors(i, k) = vectors(i, order[k]);
  }
  return out;
}

double entropy_of_spectrum(std::span<const double> spectrum) {
  double s = 0.0;
  for (double p : spectrum) {
    if (p < -kNegativeEigenvalueTolerance) {
      std::ostringstream os;
      os << "negative eigenvalue " << p << " in a density matrix";
      throw NotAStateError(os.str());
    }
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log1p(-p);
  return s;
}

DensityMatrix::DensityMatrix(CMatrix entries, std::vector<std::size_t> subsystem_dims,
                             Check check)
    : entries_(std::move(entries)), dims_(std::move(subsystem_dims)) {
  if (!entries_.square()) throw DimensionError("density matrix must be square");
  if (dims_.empty()) dims_.push_back(entries_.rows());
  if (std::any_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; }))
    throw DimensionError("subsystem dimensions must be positive");
  if (product(dims_) != entries_.rows())
    throw DimensionError("subsystem dimensions do not multiply to the matrix dimension");
  require_hermitian(entries_);
  const double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " differs from 1";
    throw NotAStateError(os.str());
  }
  if (check == Check::full) {
    const auto values = eigvalsh(entries_);
    if (!values.empty() && values.front() < -kNegativeEigenvalueTolerance) {
      std::ostringstream os;
      os << "density matrix has negative eigenvalue " << values.front();
      throw NotAStateError(os.str());
    }
  }
}

DensityMatrix::DensityMatrix(CMatrix entries, Check check)
    : DensityMatrix(std::move(entries), std::vector<std::size_t>{}, check) {}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<std::size_t> subsystem_dims) {
  const std::size_t d = product(subsystem_dims);
  CMatrix m = CMatrix::identity(d);
  m *= Complex(1.0 / static_cast<double>(d));
  return DensityMatrix(std::move(m), std::move(subsystem_dims), Check::structure);
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes,
                                  std::vector<std::size_t> subsystem_dims) {
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (norm <= 0.0) throw ArgumentError("zero state vector");
  const std::size_t d = amplitudes.size();
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm;
  return DensityMatrix(std::move(m), std::move(subsystem_dims), Check::structure);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> dims = a.subsystem_dims();
  dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
  return DensityMatrix(kron(a.entries(), b.entries()), std::move(dims),
                       DensityMatrix::Check::structure);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto values = eigvalsh(rho.entries());
  return entropy_of_spectrum(values);
}

std::vector<std::size_t> complement(std::span<const std::size_t> subset, std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i)
    if (std::find(subset.begin(), subset.end(), i) == subset.end()) out.push_back(i);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto& dims = rho.subsystem_dims();
  const std::size_t count = dims.size();
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (kept.empty()) throw ArgumentError("partial trace: keep set is empty");
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw ArgumentError("partial trace: duplicate subsystem index");
  if (kept.back() >= count) throw ArgumentError("partial trace: subsystem index out of range");
  if (kept.size() == count) throw ArgumentError("partial trace: keep set covers every subsystem");
  const auto traced = complement(kept, count);

  // Row-major strides of the full index.
  std::vector<std::size_t> stride(count);
  std::size_t acc = 1;
  for (std::size_t s = count; s-- > 0;) {
    stride[s] = acc;
    acc *= dims[s];
  }
  std::vector<std::size_t> kept_dims, traced_dims;
  for (auto s : kept) kept_dims.push_back(dims[s]);
  for (auto s : traced) traced_dims.push_back(dims[s]);
  const std::size_t dk = product(kept_dims);
  const std::size_t dt = product(traced_dims);

  // full_index[t * dk + k] for traced index t and kept index k.
  auto compose = [&](const std::vector<std::size_t>& subsystems,
                     const std::vector<std::size_t>& sub_dims, std::size_t flat) {
    std::size_t offset = 0;
    for (std::size_t s = subsystems.size(); s-- > 0;) {
      offset += (flat % sub_dims[s]) * stride[subsystems[s]];
      flat /= sub_dims[s];
    }
    return offset;
  };
  std::vector<std::size_t> kept_offset(dk), traced_offset(dt);
  for (std::size_t k = 0; k < dk; ++k) kept_offset[k] = compose(kept, kept_dims, k);
  for (std::size_t t = 0; t < dt; ++t) traced_offset[t] = compose(traced, traced_dims, t);

  CMatrix out(dk, dk);
  const auto& m = rho.entries();
  for (std::size_t t = 0; t < dt; ++t)
    for (std::size_t k = 0; k < dk; ++k) {
      const Complex* row = m.row(traced_offset[t] + kept_offset[k]);
      Complex* dst = out.row(k);
      for (std::size_t l = 0; l < dk; ++l) dst[l] += row[traced_offset[t] + kept_offset[l]];
    }
  // Restore exact Hermiticity lost to summation order.
  for (std::size_t i = 0; i < dk; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < dk; ++j) {
      const Complex v = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return DensityMatrix(std::move(out), std::move(kept_dims), DensityMatrix::Check::structure);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ArgumentError("trace distance: dimension mismatch");
  const auto values = eigvalsh(rho.entries() - sigma.entries());
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return s;
}

double mutual_information(const DensityMatrix& rho, std::span<const std::size_t> subsystem_a) {
  const std::size_t count = rho.subsystem_count();
  std::vector<std::size_t> a(subsystem_a.begin(), subsystem_a.end());
  std::sort(a.begin(), a.end());
  if (a.empty() || a.size() >= count || a.back() >= count)
    throw ArgumentError("mutual information: cut must split the subsystems into two nonempty parts");
  const auto b = complement(a, count);
  const double sa = von_neumann_entropy(partial_trace(rho, a));
  const double sb = von_neumann_entropy(partial_trace(rho, b));
  const double sab = von_neumann_entropy(rho);
  const double info = sa + sb - sab;
  if (info < -1e-9) throw InternalError("mutual information came out negative");
  return std::max(info, 0.0);
}

}  // namespace qdiscord
