#include "qdiscord/discord_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include "qdiscord/errors.hpp"

namespace qdiscord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOutcomeFloor = 1e-14;

std::array<double, 3> axis(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

const std::array<CMatrix, 4>& paulis() {
  static const std::array<CMatrix, 4> p{pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  return p;
}

double entropy_of(const CMatrix& m) {
  const auto v = eigvalsh(m);
  return entropy_of_spectrum(v);
}

// Tridiagonal QR through Eigen; the general objective evaluates it twice per
// angle.
double entropy_of_conditional(const CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("eigenvalue solver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return entropy_of_spectrum(
      std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

// Bloch-form objective for two qubits with the measurement on B.
class QubitObjective {
 public:
  explicit QubitObjective(const CMatrix& rho) {
    const auto& s = paulis();
    for (int k = 0; k < 3; ++k) {
      a_[k] = (rho * kron(s[k + 1], s[0])).trace().real();
      b_[k] = (rho * kron(s[0], s[k + 1])).trace().real();
      for (int l = 0; l < 3; ++l) t_[k][l] = (rho * kron(s[k + 1], s[l + 1])).trace().real();
    }
  }

  double operator()(double theta, double phi) const {
    const auto n = axis(theta, phi);
    double nb = 0.0;
    std::array<double, 3> tn{};
    for (int k = 0; k < 3; ++k) {
      nb += n[k] * b_[k];
      for (int l = 0; l < 3; ++l) tn[k] += t_[k][l] * n[l];
    }
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double p = 0.5 * (1.0 + sign * nb);
      if (p < kOutcomeFloor) continue;
      double len2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double v = (a_[k] + sign * tn[k]) / (2.0 * p);
        len2 += v * v;
      }
      const double len = std::min(1.0, std::sqrt(len2));
      total += p * binary_entropy(0.5 * (1.0 + len));
    }
    return total;
  }

 private:
  std::array<double, 3> a_{}, b_{};
  double t_[3][3]{};
};

// (d_A x 2) objective; M_k = tr_B[(I (x) sigma_k) rho].
class GeneralObjective {
 public:
  explicit GeneralObjective(const CMatrix& rho) : da_(rho.rows() / 2) {
    const auto& s = paulis();
    for (int k = 0; k < 4; ++k) {
      CMatrix m(da_, da_);
      for (std::size_t a = 0; a < da_; ++a)
        for (std::size_t ap = 0; ap < da_; ++ap) {
          Complex acc = 0.0;
          for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t bp = 0; bp < 2; ++bp)
              acc += s[k](b, bp) * rho(2 * ap + bp, 2 * a + b);
          m(ap, a) = acc;
        }
      m_[k] = std::move(m);
    }
  }

  const CMatrix& marginal() const { return m_[0]; }

  double operator()(double theta, double phi) const {
    const auto n = axis(theta, phi);
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
      CMatrix x = m_[0];
      for (int k = 0; k < 3; ++k) x += m_[k + 1] * Complex(sign * n[k]);
      x *= Complex(0.5);
      const double p = x.trace().real();
      if (p < kOutcomeFloor) continue;
      x *= Complex(1.0 / p);
      total += p * entropy_of_conditional(x);
    }
    return total;
  }

 private:
  std::size_t da_;
  std::array<CMatrix, 4> m_;
};

struct Minimum {
  double value;
  MeasurementAngles angles;
};

template <typename Objective>
Minimum minimize(const Objective& f, const OracleOptions& options) {
  const std::size_t nt = options.n_theta, np = options.n_phi;
  if (nt < 2 || np < 1) throw ArgumentError("oracle grid needs n_theta >= 2 and n_phi >= 1");
  if (!(options.angle_tolerance > 0.0)) throw ArgumentError("angle tolerance must be positive");
  const double dt = 0.5 * kPi / static_cast<double>(nt - 1);
  const double dp = 2.0 * kPi / static_cast<double>(np);

  std::vector<double> grid(nt * np);
  const long long cells = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static) if (options.parallel)
  for (long long c = 0; c < cells; ++c) {
    const std::size_t i = static_cast<std::size_t>(c) / np, j = static_cast<std::size_t>(c) % np;
    grid[c] = f(dt * static_cast<double>(i), dp * static_cast<double>(j));
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < grid.size(); ++c)
    if (grid[c] < grid[best]) best = c;

  double theta = dt * static_cast<double>(best / np);
  double phi = dp * static_cast<double>(best % np);
  double value = grid[best];

  // Coordinate descent with Brent line searches on shrinking brackets.
  double wt = dt, wp = dp;
  const int bits = std::numeric_limits<double>::digits / 2 + 2;
  while (wt >= options.angle_tolerance || wp >= options.angle_tolerance) {
    std::uintmax_t iters = 200;
    const auto rt = boost::math::tools::brent_find_minima(
        [&](double t) { return f(t, phi); }, theta - wt, theta + wt, bits, iters);
    if (rt.second < value) {
      theta = rt.first;
      value = rt.second;
    }
    iters = 200;
    const auto rp = boost::math::tools::brent_find_minima(
        [&](double p) { return f(theta, p); }, phi - wp, phi + wp, bits, iters);
    if (rp.second < value) {
      phi = rp.first;
      value = rp.second;
    }
    wt *= 0.5;
    wp *= 0.5;
  }
  return {value, canonical_angles({theta, phi})};
}

CMatrix swap_qubits(const CMatrix& rho) {
  static constexpr std::size_t perm[4] = {0, 2, 1, 3};
  CMatrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(perm[i], perm[j]) = rho(i, j);
  return out;
}

DiscordResult assemble(double s_ab, double s_a, double s_b, const Minimum& m,
                       const OracleOptions& options) {
  DiscordResult r;
  r.mutual_information = std::max(0.0, s_a + s_b - s_ab);
  r.classical_correlation = s_a - m.value;
  r.discord = r.mutual_information - r.classical_correlation;
  if (r.discord < -1e-9) throw InternalError("numeric discord came out negative");
  r.argmin = m.angles;
  r.grid_resolution = {options.n_theta, options.n_phi};
  return r;
}

}  // namespace

MeasurementAngles canonical_angles(MeasurementAngles m) {
  double t = std::fmod(m.theta, 2.0 * kPi);
  double p = m.phi;
  if (t < 0.0) t += 2.0 * kPi;
  if (t > kPi) {
    t = 2.0 * kPi - t;
    p += kPi;
  }
  if (t > 0.5 * kPi) {
    t = kPi - t;
    p += kPi;
  }
  p = std::fmod(p, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  if (p >= 2.0 * kPi) p = 0.0;
  return {t, p};
}

std::array<CMatrix, 2> measurement_projectors(MeasurementAngles m) {
  const auto n = axis(m.theta, m.phi);
  const auto& s = paulis();
  CMatrix dot = s[1] * Complex(n[0]) + s[2] * Complex(n[1]) + s[3] * Complex(n[2]);
  CMatrix plus = (s[0] + dot) * Complex(0.5);
  CMatrix minus = (s[0] - dot) * Complex(0.5);
  return {std::move(plus), std::move(minus)};
}

double measured_conditional_entropy(const DensityMatrix& rho, MeasurementAngles m) {
  if (rho.dim() != 4) throw DimensionError("measured_conditional_entropy needs a 4x4 state");
  const auto proj = measurement_projectors(m);
  double total = 0.0;
  for (const auto& pi : proj) {
    const CMatrix op = kron(pauli::identity(), pi);
    CMatrix post = op * rho.entries() * op;
    const double p = post.trace().real();
    if (p < kOutcomeFloor) continue;
    post *= Complex(1.0 / p);
    const std::vector<std::size_t> keep{0};
    const DensityMatrix conditioned(std::move(post), {2, 2}, DensityMatrix::Check::structure);
    total += p * von_neumann_entropy(partial_trace(conditioned, keep));
  }
  return total;
}

DiscordResult discord_numeric(const DensityMatrix& rho, const OracleOptions& options) {
  if (rho.dim() != 4) throw DimensionError("discord_numeric needs a 4x4 state");
  const CMatrix m = options.side == MeasuredSide::second ? rho.entries() : swap_qubits(rho.entries());
  const DensityMatrix oriented(m, {2, 2}, DensityMatrix::Check::structure);
  const std::vector<std::size_t> keep_a{0}, keep_b{1};
  const double s_ab = von_neumann_entropy(oriented);
  const double s_a = von_neumann_entropy(partial_trace(oriented, keep_a));
  const double s_b = von_neumann_entropy(partial_trace(oriented, keep_b));
  const QubitObjective f(m);
  return assemble(s_ab, s_a, s_b, minimize(f, options), options);
}

double classical_correlation(const DensityMatrix& rho, const OracleOptions& options) {
  return discord_numeric(rho, options).classical_correlation;
}

DiscordResult discord_numeric_general(const DensityMatrix& rho, const OracleOptions& options) {
  if (rho.dim() < 4 || rho.dim() % 2 != 0)
    throw DimensionError("discord_numeric_general needs a (d_A x 2) state");
  if (options.side != MeasuredSide::second)
    throw UnsupportedError("the general oracle measures the last qubit only");
  const GeneralObjective f(rho.entries());
  CMatrix rho_b(2, 2);
  const std::size_t da = rho.dim() / 2;
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t bp = 0; bp < 2; ++bp) rho_b(b, bp) += rho(2 * a + b, 2 * a + bp);
  const double s_ab = von_neumann_entropy(rho);
  const double s_a = entropy_of(f.marginal());
  const double s_b = entropy_of(rho_b);
  return assemble(s_ab, s_a, s_b, minimize(f, options), options);
}

}  // namespace qdiscord
