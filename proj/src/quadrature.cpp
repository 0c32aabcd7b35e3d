#include "qdiscord/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

#include "qdiscord/errors.hpp"

namespace qdiscord {

namespace {

constexpr unsigned kPanelOrder = 30;
constexpr std::size_t kChunks = 16;
constexpr std::size_t kMaxPanels = std::size_t{1} << 15;

template <typename Real>
GaussLegendreRule<Real> build_rule(unsigned order) {
  using std::abs;
  const auto positive = boost::math::legendre_p_zeros<Real>(static_cast<int>(order));
  GaussLegendreRule<Real> rule;
  for (const Real& x : positive) {
    const Real dp = boost::math::legendre_p_prime(static_cast<int>(order), x);
    const Real w = 2 / ((1 - x * x) * dp * dp);
    if (abs(x) == 0) {
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
    } else {
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

}  // namespace

template <typename Real>
const GaussLegendreRule<Real>& gauss_legendre_rule(unsigned order) {
  static std::mutex mutex;
  static std::map<unsigned, GaussLegendreRule<Real>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule<Real>(order)).first;
  return it->second;
}

template <>
double moment_tolerance<double>() {
  return 1e-13;
}

template <>
double moment_tolerance<Extended>() {
  return 1e-45;
}

template <typename Real>
MomentTable<Real>::MomentTable(double gamma, double h, int max_index) : max_index_(max_index) {
  using std::abs;
  using std::acos;
  using std::sin;
  if (max_index < 0) throw ArgumentError("moment table needs max_index >= 0");
  if (!(gamma >= 0.0) || !(h >= 0.0) || !std::isfinite(gamma) || !std::isfinite(h))
    throw ArgumentError("moment table needs finite gamma >= 0 and h >= 0");
  const std::size_t count = 2 * static_cast<std::size_t>(max_index) + 1;

  if (gamma == 0.0) {
    values_.assign(count, Real(0));
    const Real pi_r = pi<Real>();
    const Real t0 = h >= 1.0 ? pi_r : Real(acos(Real(-h)));
    values_[max_index] = 2 * t0 / pi_r - 1;
    for (int n = 1; n <= max_index; ++n) {
      const Real v = 2 * sin(n * t0) / (pi_r * n);
      values_[max_index + n] = v;
      values_[max_index - n] = v;
    }
    return;
  }

  const Real g(gamma), hh(h);
  std::size_t panels = std::max<std::size_t>(16, static_cast<std::size_t>(max_index) / 4);
  std::vector<Real> coarse, fine;
  integrate(g, hh, panels, coarse);
  const Real tol(moment_tolerance<Real>());
  for (;;) {
    if (2 * panels > kMaxPanels)
      throw InternalError("fermion moments did not converge; symbol too close to singular");
    integrate(g, hh, 2 * panels, fine);
    panels *= 2;
    Real worst(0);
    for (std::size_t k = 0; k < count; ++k) {
      const Real d = abs(fine[k] - coarse[k]);
      if (d > worst) worst = d;
    }
    coarse.swap(fine);
    if (worst <= tol) break;
  }
  panels_ = panels;
  values_ = std::move(coarse);
}

template <typename Real>
void MomentTable<Real>::integrate(const Real& gamma, const Real& h, std::size_t panels,
                                  std::vector<Real>& out) const {
  const auto& rule = gauss_legendre_rule<Real>(kPanelOrder);
  const std::size_t nmax = static_cast<std::size_t>(max_index_);
  const Real pi_r = pi<Real>();
  const Real width = pi_r / static_cast<long long>(panels);

  // Cosine and sine sums per chunk of panels, reduced in a fixed order.
  std::vector<std::vector<Real>> cos_part(kChunks, std::vector<Real>(nmax + 1, Real(0)));
  std::vector<std::vector<Real>> sin_part(kChunks, std::vector<Real>(nmax + 1, Real(0)));
  const long long chunks = static_cast<long long>(kChunks);
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < chunks; ++c) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const std::size_t begin = panels * static_cast<std::size_t>(c) / kChunks;
    const std::size_t end = panels * static_cast<std::size_t>(c + 1) / kChunks;
    auto& cp = cos_part[c];
    auto& sp = sin_part[c];
    for (std::size_t p = begin; p < end; ++p) {
      const Real left = width * static_cast<long long>(p);
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const Real t = left + width * (rule.nodes[q] + 1) / 2;
        const Real w = width * rule.weights[q] / 2;
        const Real ct = cos(t), st = sin(t);
        const Real re = h + ct, im = gamma * st;
        const Real mod = sqrt(re * re + im * im);
        if (mod == 0) continue;
        const Real fc = w * re / mod, fs = w * im / mod;
        Real cn(1), sn(0);
        for (std::size_t n = 0; n <= nmax; ++n) {
          cp[n] += fc * cn;
          sp[n] += fs * sn;
          const Real next = cn * ct - sn * st;
          sn = sn * ct + cn * st;
          cn = next;
        }
      }
    }
  }
  out.assign(2 * nmax + 1, Real(0));
  for (std::size_t n = 0; n <= nmax; ++n) {
    Real a(0), b(0);
    for (std::size_t c = 0; c < kChunks; ++c) {
      a += cos_part[c][n];
      b += sin_part[c][n];
    }
    out[nmax + n] = (a + b) / pi_r;
    out[nmax - n] = (a - b) / pi_r;
  }
}

template <typename Real>
const Real& MomentTable<Real>::operator()(int n) const {
  if (n < -max_index_ || n > max_index_) throw ArgumentError("moment index out of range");
  return values_[static_cast<std::size_t>(n + max_index_)];
}

template const GaussLegendreRule<double>& gauss_legendre_rule<double>(unsigned);
template const GaussLegendreRule<Extended>& gauss_legendre_rule<Extended>(unsigned);
template class MomentTable<double>;
template class MomentTable<Extended>;

}  // namespace qdiscord
