#include "qdiscord/scaling_lab.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "qdiscord/errors.hpp"
#include "qdiscord/hermitian.hpp"

namespace qdiscord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kMinFitPoints = 8;

double glaisher_factor(double power) {
  return std::pow(glaisher_constant(), power);
}

double limit_discord_of(const ModelSpec& m) {
  return limit_discord(limit_correlators(m));
}

template <typename Real>
ScalingRecord make_record(const ModelSpec& m, const RegimeTag& tag, int r,
                          const BasicPairCorrelators<Real>& c, CorrelatorSource source,
                          Precision precision, const OracleOptions& oracle) {
  ScalingRecord rec;
  rec.model = m;
  rec.regime = tag;
  rec.r = r;
  rec.correlators = to_double(c);
  rec.source = source;
  rec.precision = precision;

  BasicXState<Real> s;
  try {
    s = from_correlators(c);
  } catch (const Error& e) {
    std::ostringstream os;
    os << "correlators at r=" << r << " (" << describe(m) << ", " << to_string(source)
       << ") do not form a state: " << e.what();
    throw NotAStateError(os.str());
  }

  const Real margin = lemma1_margin(s);
  rec.lemma1_margin = to_double(margin);
  rec.lemma1 = margin >= -Real(kLemmaMargin);
  const Real mutual = xstate_mutual_information(c);
  Real d;
  if (rec.lemma1) {
    d = discord_analytic(c, kLemmaMargin);
  } else {
    const XState sd{to_double(s.a),     to_double(s.b),    to_double(s.c),
                    to_double(s.d),     to_double(s.alpha), to_double(s.beta)};
    d = Real(discord_numeric(to_density_matrix(sd), oracle).discord);
    rec.oracle_fallback = true;
  }

  const Real xinf = long_range_order<Real>(m);
  Real d_limit(0);
  if (has_long_range_order(tag.regime)) d_limit = limit_discord(limit_correlators<Real>(m, c.sz_i));

  rec.D = to_double(d);
  rec.I = to_double(mutual);
  rec.J = to_double(Real(mutual - d));
  rec.D_limit = to_double(d_limit);
  rec.D_excess = to_double(Real(d - d_limit));
  rec.connected = {to_double(Real(c.xx - xinf)), to_double(c.yy),
                   to_double(Real(c.zz - c.sz_i * c.sz_j))};
  rec.D_asym = std::numeric_limits<double>::quiet_NaN();
  if (r >= 2) {
    try {
      rec.D_asym = asymptotic_discord(m, r);
    } catch (const NotProvidedError&) {
    }
  }
  return rec;
}

template <typename Real>
std::vector<ScalingRecord> profile_impl(const ModelSpec& m, const std::vector<int>& rs,
                                        CorrelatorSource source, Precision precision,
                                        const ProfileOptions& options) {
  const auto tag = classify_regime(m);
  std::vector<BasicPairCorrelators<Real>> corr;
  if (source == CorrelatorSource::exact) {
    corr = exact_correlators_batch<Real>(m, rs, options.parallel);
  } else {
    corr.reserve(rs.size());
    for (int r : rs) corr.push_back(asymptotic_correlators<Real>(m, r));
  }

  // Magnetization and prefactors are memoized or cheap; warm them serially so
  // the parallel loop only reads.
  if (!rs.empty()) (void)limit_correlators(m);

  OracleOptions oracle = options.oracle;
  if (options.parallel) oracle.parallel = false;

  const auto n = static_cast<std::ptrdiff_t>(rs.size());
  std::vector<ScalingRecord> out(rs.size());
  std::vector<std::exception_ptr> errors(rs.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = make_record(m, tag, rs[i], corr[i], source, precision, oracle);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<ScalingRecord> run_profile(const ModelSpec& m, const std::vector<int>& rs,
                                       CorrelatorSource source, const ProfileOptions& options) {
  validate(m);
  if (source == CorrelatorSource::exact && !is_free_fermion(m))
    throw UnsupportedError("exact correlators need a free-fermion model: " + describe(m));
  Precision precision = automatic_precision(m);
  if (options.precision == PrecisionMode::standard) precision = Precision::standard;
  if (options.precision == PrecisionMode::extended) precision = Precision::extended;
  if (precision == Precision::extended)
    return profile_impl<Extended>(m, rs, source, precision, options);
  return profile_impl<double>(m, rs, source, precision, options);
}

Eigen::MatrixXd design_matrix(DecayLaw law, const std::vector<double>& r) {
  const auto n = static_cast<Eigen::Index>(r.size());
  const Eigen::Index cols = (law == DecayLaw::power || law == DecayLaw::exponential) ? 2 : 3;
  Eigen::MatrixXd x(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ri = r[static_cast<std::size_t>(i)];
    x(i, 0) = 1.0;
    switch (law) {
      case DecayLaw::power:
        x(i, 1) = std::log(ri);
        break;
      case DecayLaw::exponential:
        x(i, 1) = ri;
        break;
      case DecayLaw::power_times_exp:
        x(i, 1) = ri;
        x(i, 2) = std::log(ri);
        break;
      case DecayLaw::power_times_log:
        x(i, 1) = std::log(ri);
        x(i, 2) = std::log(std::log(ri));
        break;
    }
  }
  return x;
}

std::size_t parameter_count(DecayLaw law) {
  return (law == DecayLaw::power || law == DecayLaw::exponential) ? 2 : 3;
}

constexpr DecayLaw kLaws[] = {DecayLaw::power, DecayLaw::exponential, DecayLaw::power_times_exp,
                              DecayLaw::power_times_log};

// Leading log-slope under a law: ln r coefficient for power laws, r
// coefficient for exponential ones. Both sit at index 1.
double leading_slope(const FitReport& f) { return f.coefficients.at(1); }

}  // namespace

std::string_view to_string(CorrelatorSource s) {
  return s == CorrelatorSource::exact ? "exact" : "asymptotic";
}

std::string_view to_string(DecayLaw law) {
  switch (law) {
    case DecayLaw::power:
      return "power";
    case DecayLaw::exponential:
      return "exponential";
    case DecayLaw::power_times_exp:
      return "power_times_exp";
    case DecayLaw::power_times_log:
      return "power_times_log";
  }
  return "unknown";
}

AsymptoticDiscord asymptotic_discord_parts(const ModelSpec& m, int r) {
  validate(m);
  if (r < 2) throw ArgumentError("asymptotic discord needs r >= 2");
  const auto tag = classify_regime(m);
  const double rr = r;
  AsymptoticDiscord out;
  if (has_long_range_order(tag.regime)) out.limit = limit_discord_of(m);

  switch (tag.regime) {
    case Regime::XXZ_Critical: {
      const double ax = xxz_prefactors(tag.eta).a_x;
      out.correction = 0.5 * ax * ax * std::pow(rr, -2.0 * tag.eta);
      return out;
    }
    case Regime::XXZ_Heisenberg:
      out.correction = 2.0 / (kPi * kPi * kPi) * std::log(rr) / (rr * rr);
      return out;
    case Regime::XY_Gapped: {
      // The ordered limit state of the XY chain is classical (yy = zz = 0).
      const double a = std::get<XY>(m).alpha;
      out.correction =
          2.0 / (kPi * kPi) / (1.0 - a * a) / (rr * rr) * std::pow(a, 2.0 * rr - 2.0);
      return out;
    }
    case Regime::XXZ_Gapped:
    case Regime::XY_Critical:
      throw NotProvidedError(std::string("no asymptotic discord for regime ") +
                             std::string(to_string(tag.regime)));
    default:
      break;
  }

  const double sz = magnetization(m);
  switch (tag.regime) {
    case Regime::TFIM_Critical:
      out.correction = std::pow(2.0, 1.0 / 6.0) * std::exp(0.5) / glaisher_factor(6.0) *
                       field_prefactor_a1(sz) / std::sqrt(rr);
      return out;
    case Regime::TFIM_Para: {
      const double h = std::get<TFIM>(m).h;
      out.correction = field_prefactor_a1(sz) * std::pow(h, -2.0 * rr) /
                       (kPi * std::sqrt(1.0 - 1.0 / (h * h)) * rr);
      return out;
    }
    case Regime::TFIM_Ferro: {
      const double h = std::get<TFIM>(m).h;
      // h^(2r+2) vanishes at h = 0, where A2 itself is undefined.
      if (h == 0.0) return out;
      const double a2 = field_prefactors(sz, long_range_order<double>(m)).a2;
      out.correction = a2 * std::pow(h, 2.0 * rr + 2.0) /
                       (2.0 * kPi * std::pow(1.0 - h * h, 1.75) * rr * rr);
      return out;
    }
    case Regime::XYF_Critical: {
      const double g = std::get<XYField>(m).gamma;
      out.correction = std::pow(2.0, 13.0 / 6.0) * std::exp(0.5) / glaisher_factor(6.0) *
                       std::pow(g, 1.5) / ((1 + g) * (1 + g)) * field_prefactor_a1(sz) /
                       std::sqrt(rr);
      return out;
    }
    case Regime::XYF_Para: {
      const auto& f = std::get<XYField>(m);
      const double g = f.gamma, l = lambda_param(f.gamma, f.h).modulus;
      out.correction = 2.0 * g * field_prefactor_a1(sz) * std::pow(l, 2.0 * rr) /
                       (kPi * (1 + g) * (1 + g) * rr) *
                       std::sqrt(1 + g * g + 2 * g * (1 + l * l) / (1 - l * l));
      return out;
    }
    case Regime::XYF_FerroOuter: {
      const auto& f = std::get<XYField>(m);
      const double g = f.gamma, h = f.h, l = lambda_param(f.gamma, f.h).modulus;
      const double a2 = field_prefactors(sz, long_range_order<double>(m)).a2;
      out.correction = std::sqrt(g) * std::pow(1 - h * h, 0.25) * a2 * std::pow(l, -2.0 * rr) /
                       (kPi * (1 + g) * (l - 1 / l) * (l - 1 / l) * rr * rr);
      return out;
    }
    case Regime::XYF_DisorderCircle:
      return out;
    case Regime::XYF_FerroInner: {
      const auto& f = std::get<XYField>(m);
      const double g = f.gamma;
      const double a3 = field_prefactors(sz, long_range_order<double>(m)).a3;
      out.correction = a4_prefactor(f.gamma, f.h, a3) / rr * std::pow((1 - g) / (1 + g), rr);
      return out;
    }
    default:
      throw InternalError("unhandled regime");
  }
}

double asymptotic_discord(const ModelSpec& m, int r) {
  return asymptotic_discord_parts(m, r).total();
}

Precision automatic_precision(const ModelSpec& m) {
  return is_critical(classify_regime(m).regime) ? Precision::standard : Precision::extended;
}

std::vector<ScalingRecord> discord_profile(const ModelSpec& m, int r_min, int r_max,
                                           CorrelatorSource source,
                                           const ProfileOptions& options) {
  if (r_min < 2 || r_min >= r_max || r_max > kMaxSeparation) {
    std::ostringstream os;
    os << "discord profile needs 2 <= r_min < r_max <= " << kMaxSeparation << ", got [" << r_min
       << ", " << r_max << "]";
    throw ArgumentError(os.str());
  }
  std::vector<int> rs;
  for (int r = r_min; r <= r_max; ++r) rs.push_back(r);
  return run_profile(m, rs, source, options);
}

ScalingRecord discord_record(const ModelSpec& m, int r, CorrelatorSource source,
                             const ProfileOptions& options) {
  const int lo = source == CorrelatorSource::exact ? 1 : 2;
  if (r < lo || r > kMaxSeparation)
    throw ArgumentError("separation out of range: " + std::to_string(r));
  ProfileOptions serial = options;
  serial.parallel = false;
  return run_profile(m, {r}, source, serial).front();
}

FitReport fit_law(DecayLaw law, const std::vector<double>& r, const std::vector<double>& y) {
  if (r.size() != y.size()) throw DimensionError("fit: r and y differ in length");
  if (r.size() <= parameter_count(law)) throw ArgumentError("fit: too few points for the law");
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::VectorXd ly(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = y[static_cast<std::size_t>(i)];
    const double ri = r[static_cast<std::size_t>(i)];
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("fit: values must be positive");
    if (law == DecayLaw::power_times_log && !(ri > 1.0))
      throw DomainError("fit: ln ln r needs r > 1");
    ly(i) = std::log(v);
  }
  const Eigen::MatrixXd x = design_matrix(law, r);
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(ly);
  const Eigen::VectorXd resid = ly - x * beta;
  const double mean = ly.mean();
  const double ss_tot = (ly.array() - mean).square().sum();
  const double ss_res = resid.squaredNorm();

  FitReport f;
  f.law = law;
  f.points = y.size();
  f.coefficients.assign(beta.data(), beta.data() + beta.size());
  f.amplitude = std::exp(beta(0));
  f.exponent_or_rate = beta(1);
  f.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  f.ratio_n = std::numeric_limits<double>::quiet_NaN();
  return f;
}

FitReport fit_decay(const std::vector<ScalingRecord>& records) {
  if (records.size() < kMinFitPoints)
    throw ArgumentError("fit_decay needs at least 8 records, got " +
                        std::to_string(records.size()));
  const bool ordered = has_long_range_order(records.front().regime.regime);
  std::vector<double> r, y;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const double v = ordered ? rec.D_excess : rec.D;
    if (v > precision_floor(rec.precision)) {
      r.push_back(rec.r);
      y.push_back(v);
      kept.push_back(i);
    }
  }
  if (y.size() < kMinFitPoints) {
    std::ostringstream os;
    os << "only " << y.size() << " of " << records.size()
       << " discord values lie above the precision floor; use a smaller r_max";
    throw UnderflowError(os.str());
  }

  FitReport best;
  bool have = false;
  for (DecayLaw law : kLaws) {
    const FitReport f = fit_law(law, r, y);
    if (!have || f.r_squared > best.r_squared + kTieTolerance) {
      best = f;
      have = true;
    }
  }

  // Dominant connected correlator: largest magnitude at the largest kept r.
  const auto& last = records[kept.back()].connected;
  std::size_t dom = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(last[k]) > std::abs(last[dom])) dom = k;
  std::vector<double> rc, yc;
  for (std::size_t i : kept) {
    const double v = std::abs(records[i].connected[dom]);
    if (v > 0.0 && std::isfinite(v)) {
      rc.push_back(records[i].r);
      yc.push_back(v);
    }
  }
  if (yc.size() > parameter_count(best.law)) {
    const FitReport fc = fit_law(best.law, rc, yc);
    const double sd = leading_slope(best), sc = leading_slope(fc);
    if (std::isfinite(sd) && std::isfinite(sc) && std::abs(sc) > 1e-12) best.ratio_n = sd / sc;
  }
  return best;
}

std::vector<ContinuityRow> continuity_report(const std::vector<std::pair<XState, XState>>& pairs,
                                             double slack, const OracleOptions& oracle) {
  std::vector<ContinuityRow> rows;
  rows.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const auto rho = to_density_matrix(a);
    const auto sigma = to_density_matrix(b);
    ContinuityRow row;
    row.t = trace_distance(rho, sigma);
    if (!(row.t > 0.0) || row.t > 0.2) {
      std::ostringstream os;
      os << "continuity pairs need trace distance in (0, 0.2], got " << row.t;
      throw ArgumentError(os.str());
    }
    const double da = discord_numeric(rho, oracle).discord;
    const double db = discord_numeric(sigma, oracle).discord;
    row.delta_discord = std::abs(da - db);
    row.bound_term = -4.0 * row.t * std::log(row.t);
    row.ratio = row.delta_discord / (row.bound_term + slack * row.t);
    row.flagged = row.ratio > 1.0;
    rows.push_back(row);
  }
  return rows;
}

namespace {

XState random_xstate_from(std::mt19937_64& gen) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double w[4];
  double total = 0.0;
  for (double& v : w) total += (v = gamma(gen));
  XState s;
  s.a = w[0] / total;
  s.b = w[1] / total;
  s.c = w[2] / total;
  s.d = w[3] / total;
  s.alpha = unit(gen) * std::sqrt(s.a * s.d);
  s.beta = unit(gen) * std::sqrt(s.b * s.c);
  return s;
}

XState mix(const XState& x, const XState& y, double e) {
  return {(1 - e) * x.a + e * y.a,         (1 - e) * x.b + e * y.b,
          (1 - e) * x.c + e * y.c,         (1 - e) * x.d + e * y.d,
          (1 - e) * x.alpha + e * y.alpha, (1 - e) * x.beta + e * y.beta};
}

}  // namespace

XState random_xstate(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return random_xstate_from(gen);
}

std::vector<std::pair<XState, XState>> perturbed_xstate_pairs(std::uint64_t seed, std::size_t count,
                                                              double t_min, double t_max) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || t_max > 0.2)
    throw ArgumentError("perturbed pairs need 0 < t_min <= t_max <= 0.2");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> logt(std::log(t_min), std::log(t_max));
  std::vector<std::pair<XState, XState>> pairs;
  pairs.reserve(count);
  while (pairs.size() < count) {
    const XState rho = random_xstate_from(gen);
    const XState tau = random_xstate_from(gen);
    const double span = trace_distance(to_density_matrix(rho), to_density_matrix(tau));
    const double target = std::exp(logt(gen));
    if (span < target) continue;
    pairs.emplace_back(rho, mix(rho, tau, target / span));
  }
  return pairs;
}

}  // namespace qdiscord
