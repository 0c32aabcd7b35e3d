#include "qdiscord/chain_models.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "qdiscord/errors.hpp"

namespace qdiscord {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool on_disorder_circle(double gamma, double h) {
  return std::abs(h - std::sqrt(1.0 - gamma * gamma)) <= kDisorderCircleTolerance;
}

}  // namespace

void validate(const ModelSpec& m) {
  std::visit(overloaded{
                 [](const XXZ& x) {
                   if (!std::isfinite(x.delta)) throw ArgumentError("delta must be finite");
                 },
                 [](const XY& x) {
                   if (!(x.alpha >= 0.0 && x.alpha <= 1.0))
                     throw ArgumentError("XY chain needs 0 <= alpha <= 1");
                 },
                 [](const TFIM& x) {
                   if (!(x.h >= 0.0) || !std::isfinite(x.h))
                     throw ArgumentError("transverse-field Ising chain needs finite h >= 0");
                 },
                 [](const XYField& x) {
                   if (!(x.gamma > 0.0 && x.gamma <= 1.0))
                     throw ArgumentError("XY chain in a field needs 0 < gamma <= 1");
                   if (!(x.h >= 0.0) || !std::isfinite(x.h))
                     throw ArgumentError("XY chain in a field needs finite h >= 0");
                 },
             },
             m);
}

std::string_view model_name(const ModelSpec& m) {
  return std::visit(overloaded{
                        [](const XXZ&) { return std::string_view("xxz"); },
                        [](const XY&) { return std::string_view("xy"); },
                        [](const TFIM&) { return std::string_view("tfim"); },
                        [](const XYField&) { return std::string_view("xyfield"); },
                    },
                    m);
}

std::string describe(const ModelSpec& m) {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{
                 [&](const XXZ& x) { os << "xxz delta=" << x.delta; },
                 [&](const XY& x) { os << "xy alpha=" << x.alpha; },
                 [&](const TFIM& x) { os << "tfim h=" << x.h; },
                 [&](const XYField& x) { os << "xyfield gamma=" << x.gamma << " h=" << x.h; },
             },
             m);
  return os.str();
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::XXZ_Critical: return "XXZ_Critical";
    case Regime::XXZ_Heisenberg: return "XXZ_Heisenberg";
    case Regime::XXZ_Gapped: return "XXZ_Gapped";
    case Regime::XY_Gapped: return "XY_Gapped";
    case Regime::XY_Critical: return "XY_Critical";
    case Regime::TFIM_Critical: return "TFIM_Critical";
    case Regime::TFIM_Para: return "TFIM_Para";
    case Regime::TFIM_Ferro: return "TFIM_Ferro";
    case Regime::XYF_Critical: return "XYF_Critical";
    case Regime::XYF_Para: return "XYF_Para";
    case Regime::XYF_FerroOuter: return "XYF_FerroOuter";
    case Regime::XYF_DisorderCircle: return "XYF_DisorderCircle";
    case Regime::XYF_FerroInner: return "XYF_FerroInner";
  }
  return "unknown";
}

bool has_long_range_order(Regime r) {
  switch (r) {
    case Regime::XY_Gapped:
    case Regime::TFIM_Ferro:
    case Regime::XYF_FerroOuter:
    case Regime::XYF_DisorderCircle:
    case Regime::XYF_FerroInner:
      return true;
    default:
      return false;
  }
}

bool is_critical(Regime r) {
  switch (r) {
    case Regime::XXZ_Critical:
    case Regime::XXZ_Heisenberg:
    case Regime::XY_Critical:
    case Regime::TFIM_Critical:
    case Regime::XYF_Critical:
      return true;
    default:
      return false;
  }
}

RegimeTag classify_regime(const ModelSpec& m) {
  validate(m);
  return std::visit(
      overloaded{
          [](const XXZ& x) -> RegimeTag {
            if (x.delta <= -1.0)
              throw UnsupportedError("XXZ chain with delta <= -1 (ferromagnetic) is not treated");
            if (x.delta == 1.0) return {Regime::XXZ_Heisenberg};
            if (x.delta > 1.0) return {Regime::XXZ_Gapped};
            return {Regime::XXZ_Critical, std::acos(-x.delta) / kPi};
          },
          [](const XY& x) -> RegimeTag {
            return {x.alpha == 1.0 ? Regime::XY_Critical : Regime::XY_Gapped};
          },
          [](const TFIM& x) -> RegimeTag {
            if (x.h == 1.0) return {Regime::TFIM_Critical};
            return {x.h > 1.0 ? Regime::TFIM_Para : Regime::TFIM_Ferro};
          },
          [](const XYField& x) -> RegimeTag {
            if (x.h == 1.0) return {Regime::XYF_Critical};
            if (x.h > 1.0) return {Regime::XYF_Para};
            if (on_disorder_circle(x.gamma, x.h)) return {Regime::XYF_DisorderCircle};
            return {x.h > std::sqrt(1.0 - x.gamma * x.gamma) ? Regime::XYF_FerroOuter
                                                              : Regime::XYF_FerroInner};
          },
      },
      m);
}

FreeFermionParams free_fermion_params(const ModelSpec& m) {
  validate(m);
  return std::visit(
      overloaded{
          [](const XXZ& x) -> FreeFermionParams {
            if (x.delta != 0.0)
              throw UnsupportedError(
                  "exact correlators for the XXZ chain exist only at delta = 0 (free fermions)");
            return {0.0, 0.0, true};
          },
          [](const XY& x) -> FreeFermionParams {
            return {(1.0 - x.alpha) / (1.0 + x.alpha), 0.0};
          },
          [](const TFIM& x) -> FreeFermionParams { return {1.0, x.h}; },
          [](const XYField& x) -> FreeFermionParams { return {x.gamma, x.h}; },
      },
      m);
}

bool is_free_fermion(const ModelSpec& m) {
  if (const auto* x = std::get_if<XXZ>(&m)) return x->delta == 0.0;
  return true;
}

double magnetization(const ModelSpec& m) {
  validate(m);
  double gamma = 0.0, h = 0.0;
  if (const auto* t = std::get_if<TFIM>(&m)) {
    gamma = 1.0;
    h = t->h;
  } else if (const auto* f = std::get_if<XYField>(&m)) {
    gamma = f->gamma;
    h = f->h;
  } else {
    return 0.0;
  }
  const auto f = [gamma, h](double t) {
    const double re = h + std::cos(t), im = gamma * std::sin(t);
    const double mod = std::hypot(re, im);
    return mod == 0.0 ? 0.0 : re / mod;
  };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi, 20, 1e-14, &error);
  if (error > 1e-11 * kPi) throw InternalError("magnetization quadrature did not converge");
  return value / kPi;
}

double fermion_moment(const ModelSpec& m, int n) {
  const auto p = free_fermion_params(m);
  const MomentTable<double> table(p.gamma, p.h, std::abs(n));
  return table(n);
}

template <typename Real>
Real toeplitz_determinant(const MomentTable<Real>& g, int r, int offset) {
  using std::abs;
  if (r < 1) throw ArgumentError("Toeplitz determinant needs r >= 1");
  if (r - 1 + std::abs(offset) > g.max_index())
    throw ArgumentError("moment table too short for the requested determinant");
  const std::size_t n = static_cast<std::size_t>(r);
  std::vector<Real> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = g(static_cast<int>(i) - static_cast<int>(j) + offset);
  Real det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a[i * n + k]) > abs(a[piv * n + k])) piv = i;
    if (a[piv * n + k] == 0) return Real(0);
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = -det;
    }
    const Real pivot = a[k * n + k];
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = a[i * n + k] / pivot;
      if (f == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

template <typename Real>
std::vector<BasicPairCorrelators<Real>> exact_correlators_batch(const ModelSpec& m,
                                                                std::span<const int> rs,
                                                                bool parallel) {
  const auto p = free_fermion_params(m);
  int rmax = 0;
  for (int r : rs) {
    if (r < 1 || r > kMaxSeparation)
      throw ArgumentError("separation must lie in [1, " + std::to_string(kMaxSeparation) + "]");
    rmax = std::max(rmax, r);
  }
  std::vector<BasicPairCorrelators<Real>> out(rs.size());
  if (rs.empty()) return out;
  const MomentTable<Real> g(p.gamma, p.h, rmax + 1);
  const long long count = static_cast<long long>(rs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long k = 0; k < count; ++k) {
    const int r = rs[k];
    BasicPairCorrelators<Real> c;
    c.sz_i = c.sz_j = g(0);
    c.xx = toeplitz_determinant(g, r, 1);
    c.yy = toeplitz_determinant(g, r, -1);
    c.zz = g(0) * g(0) - g(r) * g(-r);
    if (p.staggered && r % 2 == 1) {
      c.xx = -c.xx;
      c.yy = -c.yy;
    }
    out[k] = c;
  }
  return out;
}

PairCorrelators exact_correlators(const ModelSpec& m, int r) {
  const int rs[1] = {r};
  return exact_correlators_batch<double>(m, rs, false).front();
}

double glaisher_constant() { return boost::math::constants::glaisher<double>(); }

namespace {

// Integrand pieces with exponentially decaying terms written in stable form.
//   sinh(e x) / (sinh x cosh((1-e) x))
double ratio_x(double eta, double x) {
  const double num = -std::expm1(-2.0 * eta * x);
  const double den = -std::expm1(-2.0 * x) * (1.0 + std::exp(-2.0 * (1.0 - eta) * x));
  return 2.0 * std::exp(-2.0 * (1.0 - eta) * x) * num / den;
}

//   sinh((2e-1) x) / (sinh(e x) cosh((1-e) x))
double ratio_z(double eta, double x) {
  const double a = 2.0 * eta - 1.0;
  if (a == 0.0) return 0.0;
  const double aa = std::abs(a);
  const double num = -std::expm1(-2.0 * aa * x);
  const double den = -std::expm1(-2.0 * eta * x) * (1.0 + std::exp(-2.0 * (1.0 - eta) * x));
  return std::copysign(2.0 * std::exp((aa - 1.0) * x) * num / den, a);
}

constexpr double kSeriesCutoff = 1e-4;

double integrand_x(double eta, double x) {
  if (x < kSeriesCutoff) {
    const double c = (eta * eta - 1.0) / 6.0 - (1.0 - eta) * (1.0 - eta) / 2.0;
    return eta * (-2.0 + (2.0 - c) * x);
  }
  return (eta * std::exp(-2.0 * x) - ratio_x(eta, x)) / x;
}

double integrand_z(double eta, double x) {
  const double k = (2.0 * eta - 1.0) / eta;
  if (x < kSeriesCutoff) {
    const double d = ((2.0 * eta - 1.0) * (2.0 * eta - 1.0) - eta * eta) / 6.0 -
                     (1.0 - eta) * (1.0 - eta) / 2.0;
    return k * (2.0 + (d - 2.0) * x);
  }
  return (ratio_z(eta, x) - k * std::exp(-2.0 * x)) / x;
}

template <typename F>
double improper_integral(F f, double eta) {
  // Integrands decay like exp(-2 min(eta, 1-eta) x).
  const double rate = 2.0 * std::min(eta, 1.0 - eta);
  const double upper = std::max(2.0, 37.0 / rate);
  double total = 0.0, err = 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  total += GK::integrate(f, 0.0, 1.0, 20, 1e-13, &err);
  double left = 1.0;
  while (left < upper) {
    const double right = std::min(upper, left * 2.0);
    total += GK::integrate(f, left, right, 20, 1e-13, &err);
    left = right;
  }
  return total;
}

}  // namespace

XXZPrefactors xxz_prefactors(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw ArgumentError("eta must lie in (0, 1)");
  static std::mutex mutex;
  static std::map<double, XXZPrefactors> cache;
  {
    const std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(eta); it != cache.end()) return it->second;
  }
  const double ix = improper_integral([eta](double x) { return integrand_x(eta, x); }, eta);
  const double iz = improper_integral([eta](double x) { return integrand_z(eta, x); }, eta);
  const double la = boost::math::lgamma(eta / (2.0 - 2.0 * eta));
  const double lb = boost::math::lgamma(1.0 / (2.0 - 2.0 * eta));
  XXZPrefactors p;
  p.a_x = std::exp((-1.0 - eta) * std::log(2.0) - 0.5 * eta * std::log(kPi) -
                   2.0 * std::log(1.0 - eta) + eta * (la - lb) + ix);
  p.a_z = std::exp((3.0 - 1.0 / eta) * std::log(2.0) - (0.5 / eta + 2.0) * std::log(kPi) +
                   (la - lb) / eta + iz);
  const std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(eta, p);
  return p;
}

double field_prefactor_a1(double sz) {
  if (!(std::abs(sz) < 1.0)) throw ArgumentError("A1 needs |<sigma^z>| < 1");
  const double s2 = sz * sz;
  // The closed form cancels to O(s^2); below 1e-2 the series is more accurate.
  if (std::abs(sz) < 1e-2) return s2 / 6.0 + s2 * s2 / 5.0 + 3.0 * s2 * s2 * s2 / 14.0;
  return 0.25 / (1.0 - s2) + std::log((1.0 - sz) / (1.0 + sz)) / (8.0 * sz);
}

namespace {

double checked_log(double num, double den) {
  if (!(num > 0.0) || !(den > 0.0))
    throw DomainError("prefactor logarithm has a nonpositive argument; limit correlators invalid");
  return std::log(num / den);
}

}  // namespace

FieldPrefactors field_prefactors(double sz, double xx_inf) {
  FieldPrefactors p;
  p.a1 = field_prefactor_a1(sz);
  const double s2 = sz * sz, w = xx_inf;
  const double first = 0.25 * checked_log(1.0 + w - s2, 1.0 - w - s2);
  double second = 0.0, third = 0.0;
  if (w != 0.0) {
    const double r4 = std::sqrt(w * w + 4.0 * s2);
    const double r1 = std::sqrt(w * w + s2);
    second = w / (4.0 * r4) * checked_log(1.0 + s2 + r4, 1.0 + s2 - r4);
    third = w / (2.0 * r1) * checked_log(1.0 - r1, 1.0 + r1);
  }
  p.a2 = first + second + third;
  p.a3 = first - second;
  return p;
}

LambdaParam lambda_param(double gamma, double h) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ArgumentError("lambda needs 0 < gamma <= 1");
  if (!(h >= 0.0)) throw ArgumentError("lambda needs h >= 0");
  if (gamma == 1.0) {
    if (h == 0.0) throw SingularityError("lambda diverges at gamma = 1, h = 0");
    return {1.0 / h, 1.0 / h, false};
  }
  const double radicand = gamma * gamma + h * h - 1.0;
  if (radicand >= 0.0) {
    const double v = (h - std::sqrt(radicand)) / (1.0 - gamma);
    return {v, std::abs(v), false};
  }
  const std::complex<double> v(h / (1.0 - gamma), -std::sqrt(-radicand) / (1.0 - gamma));
  return {v, std::abs(v), true};
}

double a4_prefactor(double gamma, double h, double a3) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("A4 needs 0 < gamma < 1");
  if (!(h >= 0.0 && h < std::sqrt(1.0 - gamma * gamma)))
    throw ArgumentError("A4 needs 0 <= h < sqrt(1 - gamma^2)");
  const auto lambda = lambda_param(gamma, h).value;
  const double den =
      std::abs((1.0 - gamma) * lambda * lambda + (1.0 + gamma) / (lambda * lambda) - 2.0);
  if (den < 1e-12) throw SingularityError("A4 denominator vanishes");
  return 4.0 / kPi / std::sqrt(gamma) / (1.0 - gamma) * std::pow(1.0 - h * h, 0.25) *
         (1.0 - gamma * gamma - h * h) / den * a3;
}

template <typename Real>
Real long_range_order(const ModelSpec& m) {
  using std::pow;
  using std::sqrt;
  const auto tag = classify_regime(m);
  if (!has_long_range_order(tag.regime)) return Real(0);
  if (const auto* x = std::get_if<XY>(&m)) return sqrt(Real(1) - Real(x->alpha) * Real(x->alpha));
  if (const auto* t = std::get_if<TFIM>(&m)) return pow(Real(1) - Real(t->h) * Real(t->h), Real(0.25));
  const auto& f = std::get<XYField>(m);
  const Real g(f.gamma), h(f.h);
  return 2 * sqrt(g) / (1 + g) * pow(Real(1) - h * h, Real(0.25));
}

template <typename Real>
BasicPairCorrelators<Real> limit_correlators(const ModelSpec& m, const Real& sz) {
  return BasicPairCorrelators<Real>::symmetric(sz, long_range_order<Real>(m), Real(0), sz * sz);
}

PairCorrelators limit_correlators(const ModelSpec& m) {
  return limit_correlators<double>(m, magnetization(m));
}

template <typename Real>
BasicPairCorrelators<Real> asymptotic_correlators(const ModelSpec& m, int r) {
  using std::exp;
  using std::log;
  using std::pow;
  using std::sqrt;
  if (r < 2) throw ArgumentError("asymptotic correlators need r >= 2");
  const auto tag = classify_regime(m);
  const Real rr(r);
  const Real pi_r = pi<Real>();
  const Real sign = r % 2 == 0 ? Real(1) : Real(-1);
  const Real glaisher = boost::math::constants::glaisher<Real>();
  BasicPairCorrelators<Real> c;

  switch (tag.regime) {
    case Regime::XXZ_Critical: {
      const auto p = xxz_prefactors(tag.eta);
      const Real eta(tag.eta);
      c.xx = c.yy = Real(p.a_x) * sign * pow(rr, -eta);
      c.zz = Real(p.a_z) * sign * pow(rr, -1 / eta) - 1 / (pi_r * pi_r * eta * rr * rr);
      return c;
    }
    case Regime::XXZ_Heisenberg: {
      c.xx = c.yy = c.zz = sqrt(Real(2)) * sign * sqrt(log(rr)) / (pow(pi_r, Real(1.5)) * rr);
      return c;
    }
    case Regime::XY_Gapped: {
      const Real a(std::get<XY>(m).alpha);
      const Real q = 1 - a * a;
      c.yy = 2 / pi_r / sqrt(q) / rr * pow(a, r);
      if (r % 2 == 0) {
        c.zz = 0;
        c.xx = sqrt(q) + 4 / pi_r * pow(q, Real(-1.5)) / (rr * rr) * pow(a, r + 2);
      } else {
        c.zz = -2 / pi_r / (rr * rr) * pow(a, r);
        c.xx = sqrt(q) + 2 * (1 + a * a) * pow(a, r + 1) / (pi_r * pow(q, Real(1.5)) * rr * rr);
      }
      return c;
    }
    case Regime::XXZ_Gapped:
    case Regime::XY_Critical:
      throw NotProvidedError(std::string("no asymptotic correlators for regime ") +
                             std::string(to_string(tag.regime)));
    default:
      break;
  }

  // Field models: sigma^z from the magnetization integral, zz at its limit,
  // xx from the discord asymptotics.
  const Real sz(magnetization(m));
  c.sz_i = c.sz_j = sz;
  c.zz = sz * sz;
  c.yy = 0;
  const Real xinf = long_range_order<Real>(m);
  switch (tag.regime) {
    case Regime::TFIM_Critical:
      c.xx = pow(Real(2), Real(1) / 12) * exp(Real(0.25)) / pow(glaisher, 3) * pow(rr, Real(-0.25));
      break;
    case Regime::TFIM_Para: {
      const Real h(std::get<TFIM>(m).h);
      c.xx = pow(h, -r) / sqrt(pi_r * rr * sqrt(1 - 1 / (h * h)));
      break;
    }
    case Regime::TFIM_Ferro: {
      const Real h(std::get<TFIM>(m).h);
      c.xx = xinf + pow(h, 2 * r + 2) / (2 * pi_r * pow(1 - h * h, Real(1.75)) * rr * rr);
      break;
    }
    case Regime::XYF_Critical: {
      const Real g(std::get<XYField>(m).gamma);
      c.xx = pow(Real(2), Real(13) / 12) * exp(Real(0.25)) / pow(glaisher, 3) *
             pow(g, Real(0.75)) / (1 + g) * pow(rr, Real(-0.25));
      break;
    }
    case Regime::XYF_Para: {
      const auto& f = std::get<XYField>(m);
      const Real g(f.gamma), l(lambda_param(f.gamma, f.h).modulus);
      c.xx = pow(l, r) * sqrt(2 * g / (pi_r * (1 + g) * (1 + g) * rr) *
                              sqrt(1 + g * g + 2 * g * (1 + l * l) / (1 - l * l)));
      break;
    }
    case Regime::XYF_FerroOuter: {
      const auto& f = std::get<XYField>(m);
      const Real g(f.gamma), h(f.h), l(lambda_param(f.gamma, f.h).modulus);
      c.xx = xinf + sqrt(g) * pow(1 - h * h, Real(0.25)) * pow(l, -2 * r) /
                        (pi_r * (1 + g) * (l - 1 / l) * (l - 1 / l) * rr * rr);
      break;
    }
    case Regime::XYF_DisorderCircle:
      c.xx = xinf;
      break;
    case Regime::XYF_FerroInner: {
      const auto& f = std::get<XYField>(m);
      const Real g(f.gamma);
      c.xx = xinf;
      c.yy = Real(a4_prefactor(f.gamma, f.h, 1.0)) / rr * pow((1 - g) / (1 + g), r);
      break;
    }
    default:
      throw InternalError("unhandled regime");
  }
  return c;
}

template double toeplitz_determinant<double>(const MomentTable<double>&, int, int);
template Extended toeplitz_determinant<Extended>(const MomentTable<Extended>&, int, int);
template std::vector<BasicPairCorrelators<double>> exact_correlators_batch<double>(
    const ModelSpec&, std::span<const int>, bool);
template std::vector<BasicPairCorrelators<Extended>> exact_correlators_batch<Extended>(
    const ModelSpec&, std::span<const int>, bool);
template BasicPairCorrelators<double> asymptotic_correlators<double>(const ModelSpec&, int);
template BasicPairCorrelators<Extended> asymptotic_correlators<Extended>(const ModelSpec&, int);
template double long_range_order<double>(const ModelSpec&);
template Extended long_range_order<Extended>(const ModelSpec&);
template BasicPairCorrelators<double> limit_correlators<double>(const ModelSpec&, const double&);
template BasicPairCorrelators<Extended> limit_correlators<Extended>(const ModelSpec&,
                                                                   const Extended&);

}  // namespace qdiscord
