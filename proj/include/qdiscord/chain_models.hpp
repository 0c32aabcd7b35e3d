#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdiscord/precision.hpp"
#include "qdiscord/quadrature.hpp"
#include "qdiscord/xstate.hpp"

// The four spin chains, their phases, ground-state two-point correlators
// (exact free-fermion values and leading asymptotics) and the amplitude
// prefactors that enter the discord asymptotics.
namespace qdiscord {

// H = sum_i  x_i x_{i+1} + y_i y_{i+1} + delta z_i z_{i+1}
struct XXZ {
  double delta = 0.0;
};
// H = -sum_i  x_i x_{i+1} + alpha y_i y_{i+1},  0 <= alpha <= 1
struct XY {
  double alpha = 0.0;
};
// H = -sum_i  x_i x_{i+1} + h z_i,  h >= 0
struct TFIM {
  double h = 0.0;
};
// H = -sum_i  (1+gamma)/2 x_i x_{i+1} + (1-gamma)/2 y_i y_{i+1} + h z_i
struct XYField {
  double gamma = 1.0;
  double h = 0.0;
};

using ModelSpec = std::variant<XXZ, XY, TFIM, XYField>;

// Throws ArgumentError for out-of-range parameters.
void validate(const ModelSpec& m);
std::string describe(const ModelSpec& m);
std::string_view model_name(const ModelSpec& m);

enum class Regime {
  XXZ_Critical,
  XXZ_Heisenberg,
  XXZ_Gapped,
  XY_Gapped,
  XY_Critical,
  TFIM_Critical,
  TFIM_Para,
  TFIM_Ferro,
  XYF_Critical,
  XYF_Para,
  XYF_FerroOuter,
  XYF_DisorderCircle,
  XYF_FerroInner,
};

struct RegimeTag {
  Regime regime;
  double eta = 0.0;  // XXZ_Critical only: arccos(-delta)/pi
};

std::string_view to_string(Regime r);

// Regimes with long-range x order, where discord saturates at a nonzero limit.
bool has_long_range_order(Regime r);
bool is_critical(Regime r);

// Tolerance used to place h on the disorder circle h = sqrt(1 - gamma^2).
inline constexpr double kDisorderCircleTolerance = 1e-12;

RegimeTag classify_regime(const ModelSpec& m);

// Quadratic-fermion parameters (gamma, h) of the free-fermion models. XY(alpha)
// maps to gamma = (1-alpha)/(1+alpha), h = 0. Throws UnsupportedError for XXZ
// with delta != 0.
struct FreeFermionParams {
  double gamma;
  double h;
  bool staggered = false;  // XXZ delta = 0: xx and yy carry (-1)^r
};
FreeFermionParams free_fermion_params(const ModelSpec& m);
bool is_free_fermion(const ModelSpec& m);

// <sigma^z>, by adaptive quadrature to 1e-11 absolute. Zero for XXZ and XY.
double magnetization(const ModelSpec& m);

// G(n) for a free-fermion model.
double fermion_moment(const ModelSpec& m, int n);

inline constexpr int kMaxSeparation = 512;

// det[a(i,j)]_{r x r} with a(i,j) = G(i - j + offset), dense LU with partial
// pivoting.
template <typename Real>
Real toeplitz_determinant(const MomentTable<Real>& g, int r, int offset);

// Exact ground-state correlators at separations rs (each in [1, 512]).
//   xx = det[G(i-j+1)],  yy = det[G(i-j-1)],  zz = G(0)^2 - G(r) G(-r),
//   sz = G(0).
// parallel = false is the serial reference for the OpenMP batch.
template <typename Real>
std::vector<BasicPairCorrelators<Real>> exact_correlators_batch(const ModelSpec& m,
                                                                std::span<const int> rs,
                                                                bool parallel = true);

PairCorrelators exact_correlators(const ModelSpec& m, int r);

// Leading-order correlators per regime, r >= 2. Throws NotProvidedError where
// no asymptotic form is available.
template <typename Real>
BasicPairCorrelators<Real> asymptotic_correlators(const ModelSpec& m, int r);

// Long-range order <xx>_inf; zero outside the ordered regimes.
template <typename Real>
Real long_range_order(const ModelSpec& m);

// |i - j| -> infinity correlators (sz, sz, xx_inf, 0, sz^2) for a given
// magnetization, and with the model's own magnetization.
template <typename Real>
BasicPairCorrelators<Real> limit_correlators(const ModelSpec& m, const Real& sz);
PairCorrelators limit_correlators(const ModelSpec& m);

// 1.28242712910062263687...
double glaisher_constant();

struct XXZPrefactors {
  double a_z;
  double a_x;
};
// Throws ArgumentError for eta outside (0, 1).
XXZPrefactors xxz_prefactors(double eta);

struct FieldPrefactors {
  double a1;
  double a2;
  double a3;
};
// Throws ArgumentError for |sz| >= 1 and DomainError for a nonpositive
// logarithm argument.
FieldPrefactors field_prefactors(double sz, double xx_inf);
double field_prefactor_a1(double sz);

struct LambdaParam {
  std::complex<double> value;
  double modulus;
  bool oscillatory;  // complex value (inner ferromagnetic regime)
};
// (h - sqrt(gamma^2 + h^2 - 1)) / (1 - gamma); the square root is taken on
// the principal branch when its argument is negative. gamma = 1 returns 1/h.
LambdaParam lambda_param(double gamma, double h);

// Amplitude of the sigma^y envelope correction in the inner ferromagnetic
// regime. Requires 0 <= h < sqrt(1 - gamma^2) and 0 < gamma < 1.
double a4_prefactor(double gamma, double h, double a3);

}  // namespace qdiscord
