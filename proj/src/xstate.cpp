#include "qdiscord/xstate.hpp"

namespace qdiscord {

DensityMatrix to_density_matrix(const XState& s) {
  validate(s);
  CMatrix m(4, 4);
  m(0, 0) = s.a;
  m(1, 1) = s.b;
  m(2, 2) = s.c;
  m(3, 3) = s.d;
  m(0, 3) = m(3, 0) = s.alpha;
  m(1, 2) = m(2, 1) = s.beta;
  return DensityMatrix(std::move(m), {2, 2}, DensityMatrix::Check::structure);
}

XState xstate_of(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("xstate_of needs a two-qubit state");
  XState s;
  s.a = rho(0, 0).real();
  s.b = rho(1, 1).real();
  s.c = rho(2, 2).real();
  s.d = rho(3, 3).real();
  s.alpha = rho(0, 3).real();
  s.beta = rho(1, 2).real();
  return s;
}

}  // namespace qdiscord
