#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdiscord/matrix.hpp"

// Dense Hermitian linear algebra and entropy primitives. Entropies are in
// nats throughout.
namespace qdiscord {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kNegativeEigenvalueTolerance = 1e-10;

struct Eigensystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k pairs with values[k]
};

// Eigenvalues of (M + M†)/2, ascending. Throws DimensionError for
// non-square input and ValidationError when M is not Hermitian within
// kHermitianTolerance.
std::vector<double> eigvalsh(const CMatrix& m);
Eigensystem eigh(const CMatrix& m);

// Real symmetric variants (no Hermiticity check beyond symmetry).
std::vector<double> eigvalsh(const RMatrix& m);

// -sum p ln p, treating entries in [-1e-10, 0) as exact zeros. Throws
// NotAStateError for entries below -1e-10.
double entropy_of_spectrum(std::span<const double> spectrum);

// Binary entropy H(p) = -p ln p - (1-p) ln(1-p), with H(0) = H(1) = 0.
double binary_entropy(double p);

class DensityMatrix {
 public:
  enum class Check {
    full,       // Hermitian, unit trace, positive semidefinite
    structure,  // Hermitian and unit trace; PSD guaranteed by construction
  };

  DensityMatrix(CMatrix entries, std::vector<std::size_t> subsystem_dims,
                Check check = Check::full);

  // Single subsystem of dimension entries.rows().
  explicit DensityMatrix(CMatrix entries, Check check = Check::full);

  static DensityMatrix maximally_mixed(std::vector<std::size_t> subsystem_dims);
  static DensityMatrix pure(std::span<const Complex> amplitudes,
                            std::vector<std::size_t> subsystem_dims);

  std::size_t dim() const noexcept { return entries_.rows(); }
  const CMatrix& entries() const noexcept { return entries_; }
  const std::vector<std::size_t>& subsystem_dims() const noexcept { return dims_; }
  std::size_t subsystem_count() const noexcept { return dims_.size(); }

  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_(i, j);
  }

 private:
  CMatrix entries_;
  std::vector<std::size_t> dims_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

double von_neumann_entropy(const DensityMatrix& rho);

// Reduced state on the subsystems listed in keep (any order; the result
// keeps them in ascending order). keep must be a nonempty proper subset.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

// Sum of |eigenvalues| of rho - sigma. No factor 1/2.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// S(A) + S(B) - S(AB) with A = subsystem_a and B its complement.
double mutual_information(const DensityMatrix& rho, std::span<const std::size_t> subsystem_a);

// Complement of a subsystem index set within [0, count).
std::vector<std::size_t> complement(std::span<const std::size_t> subset, std::size_t count);

}  // namespace qdiscord
