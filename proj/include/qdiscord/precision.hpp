#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qdiscord {

// 50 significant decimal digits. Gapped-regime discord falls to 1e-40 and
// below while the entropies it is computed from are O(1), so those sweeps
// run in this type.
using Extended = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

enum class Precision { standard, extended };

// Smallest discord that is meaningful in the given arithmetic.
inline constexpr double precision_floor(Precision p) {
  return p == Precision::extended ? 1e-44 : 1e-13;
}

inline double to_double(double x) { return x; }
inline double to_double(const Extended& x) { return x.convert_to<double>(); }

template <typename Real>
Real real_constant(double x) {
  return Real(x);
}

template <typename Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

}  // namespace qdiscord
