#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "qdiscord/errors.hpp"
#include "qdiscord/hermitian.hpp"
#include "qdiscord/precision.hpp"

// Two-qubit X states built from spin correlators, and the closed-form
// discord available when the optimal measurement is sigma^x.
//
//        | a  0  0  alpha |
//   rho =| 0  b  beta  0  |     all entries real
//        | 0  beta c   0  |
//        | alpha 0 0   d  |
//
// Everything is templated on the scalar so gapped-regime sweeps can run in
// Extended precision; the double instantiation is the public default.
namespace qdiscord {

inline constexpr double kXStateTolerance = 1e-12;
inline constexpr double kAsymmetryTolerance = 1e-12;

template <typename Real>
struct BasicPairCorrelators {
  Real sz_i{0}, sz_j{0};  // <sigma^z_i>, <sigma^z_j>
  Real xx{0}, yy{0}, zz{0};

  static BasicPairCorrelators symmetric(Real sz, Real xx, Real yy, Real zz) {
    return {sz, sz, xx, yy, zz};
  }
};

template <typename Real>
struct BasicXState {
  Real a{0}, b{0}, c{0}, d{0};
  Real alpha{0}, beta{0};
};

using PairCorrelators = BasicPairCorrelators<double>;
using XState = BasicXState<double>;

template <typename Real>
BasicPairCorrelators<double> to_double(const BasicPairCorrelators<Real>& c) {
  return {to_double(c.sz_i), to_double(c.sz_j), to_double(c.xx), to_double(c.yy), to_double(c.zz)};
}

template <typename Real>
BasicPairCorrelators<Real> widen(const PairCorrelators& c) {
  return {Real(c.sz_i), Real(c.sz_j), Real(c.xx), Real(c.yy), Real(c.zz)};
}

namespace detail {

template <typename Real>
Real xlogx(const Real& x) {
  using std::log;
  return x > 0 ? Real(x * log(x)) : Real(0);
}

template <typename Real>
Real binary_entropy(const Real& p) {
  return -xlogx(p) - xlogx(Real(1 - p));
}

template <typename Real>
void require_symmetric(const BasicPairCorrelators<Real>& c) {
  using std::abs;
  if (abs(c.sz_i - c.sz_j) > kAsymmetryTolerance)
    throw UnsupportedError(
        "closed-form X-state expressions need <sigma^z_i> = <sigma^z_j>; use the numeric oracle");
}

}  // namespace detail

// Throws NotAStateError when the elements violate normalization or PSD.
template <typename Real>
void validate(const BasicXState<Real>& s) {
  using std::abs;
  using std::sqrt;
  const Real tol(kXStateTolerance);
  const Real sum = s.a + s.b + s.c + s.d;
  bool ok = abs(sum - 1) <= tol;
  for (const Real& p : {s.a, s.b, s.c, s.d}) ok = ok && p >= -tol && p <= 1 + tol;
  if (ok) {
    const Real ad = s.a * s.d, bc = s.b * s.c;
    ok = abs(s.alpha) <= sqrt(ad > 0 ? ad : Real(0)) + tol &&
         abs(s.beta) <= sqrt(bc > 0 ? bc : Real(0)) + tol;
  }
  if (!ok) {
    std::ostringstream os;
    os << "X state is not a density matrix: a=" << to_double(s.a) << " b=" << to_double(s.b)
       << " c=" << to_double(s.c) << " d=" << to_double(s.d) << " alpha=" << to_double(s.alpha)
       << " beta=" << to_double(s.beta);
    throw NotAStateError(os.str());
  }
}

template <typename Real>
BasicXState<Real> from_correlators(const BasicPairCorrelators<Real>& c) {
  for (const Real& v : {c.sz_i, c.sz_j, c.xx, c.yy, c.zz})
    if (v < -1 - Real(kXStateTolerance) || v > 1 + Real(kXStateTolerance))
      throw ArgumentError("correlators must lie in [-1, 1]");
  BasicXState<Real> s;
  s.a = (1 + c.sz_i + c.sz_j + c.zz) / 4;
  s.b = (1 + c.sz_i - c.sz_j - c.zz) / 4;
  s.c = (1 - c.sz_i + c.sz_j - c.zz) / 4;
  s.d = (1 - c.sz_i - c.sz_j + c.zz) / 4;
  s.alpha = (c.xx - c.yy) / 4;
  s.beta = (c.xx + c.yy) / 4;
  validate(s);
  return s;
}

// (lambda_1, ..., lambda_4): the pair (1 - zz ± (xx + yy))/4 from the inner
// block and (1 + zz ± sqrt(4 sz^2 + (xx - yy)^2))/4 from the outer block.
template <typename Real>
std::array<Real, 4> xstate_eigenvalues(const BasicXState<Real>& s,
                                       const BasicPairCorrelators<Real>& c) {
  using std::sqrt;
  detail::require_symmetric(c);
  (void)s;
  const Real sz = c.sz_i;
  const Real root = sqrt(4 * sz * sz + (c.xx - c.yy) * (c.xx - c.yy));
  std::array<Real, 4> lambda{(1 - c.zz + c.xx + c.yy) / 4, (1 - c.zz - c.xx - c.yy) / 4,
                             (1 + c.zz + root) / 4, (1 + c.zz - root) / 4};
  for (auto& l : lambda) {
    if (l < -Real(kNegativeEigenvalueTolerance))
      throw NotAStateError("X-state eigenvalue is negative");
    if (l < 0) l = 0;
  }
  return lambda;
}

// S(rho_ij) - S(rho_j).
template <typename Real>
Real conditional_entropy(const BasicXState<Real>& s, const BasicPairCorrelators<Real>& c) {
  const auto lambda = xstate_eigenvalues(s, c);
  Real joint = 0;
  for (const auto& l : lambda) joint -= detail::xlogx(l);
  return joint - detail::binary_entropy(Real((1 + c.sz_i) / 2));
}

// (|alpha| + |beta|) - |sqrt(ad) - sqrt(bc)|; nonnegative when sigma^x is
// an optimal measurement.
template <typename Real>
Real lemma1_margin(const BasicXState<Real>& s) {
  using std::abs;
  using std::sqrt;
  const Real ad = s.a * s.d, bc = s.b * s.c;
  return abs(s.alpha) + abs(s.beta) -
         abs(sqrt(ad > 0 ? ad : Real(0)) - sqrt(bc > 0 ? bc : Real(0)));
}

template <typename Real>
bool lemma1_holds(const BasicXState<Real>& s, double slack = kXStateTolerance) {
  return lemma1_margin(s) >= -Real(slack);
}

// Conditional entropy of the state after measuring sigma^x (or sigma^y,
// whichever is larger in magnitude) on the second qubit.
template <typename Real>
Real postmeasurement_entropy_x(const BasicPairCorrelators<Real>& c) {
  using std::sqrt;
  detail::require_symmetric(c);
  const Real m = c.xx * c.xx > c.yy * c.yy ? Real(c.xx * c.xx) : Real(c.yy * c.yy);
  const Real r2 = c.sz_i * c.sz_i + m;
  if (r2 < 0) throw InternalError("negative Bloch length in post-measurement entropy");
  return detail::binary_entropy(Real(Real(0.5) + sqrt(r2) / 2));
}

// Closed-form discord. Refuses with ConditionViolatedError when the sigma^x
// optimality condition fails by more than slack.
template <typename Real>
Real discord_analytic(const BasicPairCorrelators<Real>& c, double slack = kXStateTolerance) {
  const auto s = from_correlators(c);
  if (!lemma1_holds(s, slack))
    throw ConditionViolatedError("sigma^x optimality condition fails; use the numeric oracle");
  const Real d = postmeasurement_entropy_x(c) - conditional_entropy(s, c);
  if (d < Real(-1e-9)) throw InternalError("closed-form discord came out negative");
  return d > 0 ? d : Real(0);
}

// Discord of the |i-j| -> infinity state given its correlators.
template <typename Real>
Real limit_discord(const BasicPairCorrelators<Real>& limit) {
  return discord_analytic(limit);
}

// S(rho_i) + S(rho_j) - S(rho_ij) for a symmetric X state.
template <typename Real>
Real xstate_mutual_information(const BasicPairCorrelators<Real>& c) {
  const auto s = from_correlators(c);
  const auto lambda = xstate_eigenvalues(s, c);
  Real joint = 0;
  for (const auto& l : lambda) joint -= detail::xlogx(l);
  return 2 * detail::binary_entropy(Real((1 + c.sz_i) / 2)) - joint;
}

// Dense 4x4 density matrix in the basis |00>, |01>, |10>, |11>.
DensityMatrix to_density_matrix(const XState& s);

// Nearest X-state parameters of an arbitrary two-qubit state (diagonal and
// real part of the antidiagonal).
XState xstate_of(const DensityMatrix& rho);

}  // namespace qdiscord
