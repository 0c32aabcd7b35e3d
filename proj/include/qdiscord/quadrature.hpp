#pragma once

#include <cstddef>
#include <vector>

#include "qdiscord/precision.hpp"

namespace qdiscord {

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
template <typename Real>
struct GaussLegendreRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// Cached per (Real, order); safe to call from several threads.
template <typename Real>
const GaussLegendreRule<Real>& gauss_legendre_rule(unsigned order);

// Fourier moments of the free-fermion symbol nu = g/|g| with
// g(theta) = (h + cos theta) + i gamma sin theta:
//
//   G(n) = (1/pi) int_0^pi [(h + cos t) cos nt + gamma sin t sin nt] / |g(t)| dt
//
// for |n| <= max_index. gamma = 0 uses the closed form
// G(n) = 2 sin(n t0) / (pi n), G(0) = 2 t0/pi - 1, t0 = arccos(-h).
template <typename Real>
class MomentTable {
 public:
  MomentTable(double gamma, double h, int max_index);

  const Real& operator()(int n) const;
  int max_index() const noexcept { return max_index_; }
  // Panels used by the composite rule (0 for the closed form).
  std::size_t panels() const noexcept { return panels_; }

 private:
  void integrate(const Real& gamma, const Real& h, std::size_t panels, std::vector<Real>& out) const;

  int max_index_;
  std::size_t panels_ = 0;
  std::vector<Real> values_;  // values_[n + max_index_]
};

// Absolute accuracy the moment table aims for.
template <typename Real>
double moment_tolerance();

extern template class MomentTable<double>;
extern template class MomentTable<Extended>;

}  // namespace qdiscord
