#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qdiscord/chain_models.hpp"
#include "qdiscord/discord_oracle.hpp"
#include "qdiscord/xstate.hpp"

// Distance sweeps of two-site discord, the regime-wise asymptotic discord,
// decay-law fits and the continuity experiment.
namespace qdiscord {

enum class CorrelatorSource { exact, asymptotic };
enum class PrecisionMode { automatic, standard, extended };

std::string_view to_string(CorrelatorSource s);

// lemma1 margins down to -1e-9 are treated as satisfied.
inline constexpr double kLemmaMargin = 1e-9;

struct ScalingRecord {
  ModelSpec model;
  RegimeTag regime;
  int r = 0;
  PairCorrelators correlators;
  // xx - xx_inf, yy, zz - sz^2 evaluated in working precision.
  std::array<double, 3> connected{0, 0, 0};
  CorrelatorSource source = CorrelatorSource::exact;
  Precision precision = Precision::standard;
  double D = 0.0;
  double J = 0.0;
  double I = 0.0;
  double D_asym = 0.0;  // NaN where no asymptotic form exists
  // Limit discord D_{sigma^x}(rho_inf) (zero without long-range order) and
  // D - D_limit evaluated in working precision.
  double D_limit = 0.0;
  double D_excess = 0.0;
  bool lemma1 = true;
  double lemma1_margin = 0.0;
  bool oracle_fallback = false;
};

struct AsymptoticDiscord {
  double limit = 0.0;       // D_{sigma^x}(rho_inf), zero without long-range order
  double correction = 0.0;  // r-dependent part
  double total() const { return limit + correction; }
};

// Regime formula for D(r), r >= 2. Throws NotProvidedError for regimes
// without one.
AsymptoticDiscord asymptotic_discord_parts(const ModelSpec& m, int r);
double asymptotic_discord(const ModelSpec& m, int r);

struct ProfileOptions {
  PrecisionMode precision = PrecisionMode::automatic;
  bool parallel = true;
  OracleOptions oracle{};
};

// Precision chosen by PrecisionMode::automatic: extended for gapped regimes.
Precision automatic_precision(const ModelSpec& m);

// One record per r in [r_min, r_max]. Requires 2 <= r_min < r_max <= 512;
// the exact source needs a free-fermion model.
std::vector<ScalingRecord> discord_profile(const ModelSpec& m, int r_min, int r_max,
                                           CorrelatorSource source,
                                           const ProfileOptions& options = {});

// Single record at separation r (r >= 1 for exact, >= 2 for asymptotic).
ScalingRecord discord_record(const ModelSpec& m, int r, CorrelatorSource source,
                             const ProfileOptions& options = {});

enum class DecayLaw { power, exponential, power_times_exp, power_times_log };
std::string_view to_string(DecayLaw law);

struct FitReport {
  DecayLaw law = DecayLaw::power;
  // Power laws: coefficient of ln r. Exponential laws: coefficient of r.
  double exponent_or_rate = 0.0;
  double amplitude = 0.0;  // exp(intercept)
  double r_squared = 0.0;
  // Leading-coefficient ratio of discord to the dominant connected
  // correlator under the same law; NaN when either slope vanishes.
  double ratio_n = 0.0;
  std::vector<double> coefficients;  // intercept first, in design order
  std::size_t points = 0;
};

// Least-squares fit of ln D (ln (D - D_limit) with long-range order) against
// the candidate designs
//   power            [1, ln r]
//   exponential      [1, r]
//   power_times_exp  [1, r, ln r]
//   power_times_log  [1, ln r, ln ln r]
// picking the largest r^2 (fewer parameters on ties within 1e-12). Needs at
// least 8 records above the precision floor; throws UnderflowError when every
// value is below it.
FitReport fit_decay(const std::vector<ScalingRecord>& records);

// Fit of a specific law to (r, y) pairs with y > 0.
FitReport fit_law(DecayLaw law, const std::vector<double>& r, const std::vector<double>& y);

struct ContinuityRow {
  double t = 0.0;  // trace distance (no factor 1/2)
  double delta_discord = 0.0;
  double bound_term = 0.0;  // -4 t ln t
  double ratio = 0.0;       // |dD| / (-4 t ln t + C t)
  bool flagged = false;     // ratio > 1
};

inline constexpr double kContinuitySlack = 10.0;

// Requires 0 < t <= 0.2 for every pair.
std::vector<ContinuityRow> continuity_report(const std::vector<std::pair<XState, XState>>& pairs,
                                             double slack = kContinuitySlack,
                                             const OracleOptions& oracle = {});

// Random X states rho and sigma = (1 - e) rho + e tau with the trace distance
// log-uniform in [t_min, t_max].
std::vector<std::pair<XState, XState>> perturbed_xstate_pairs(std::uint64_t seed, std::size_t count,
                                                              double t_min, double t_max);

// Random physical X state (not necessarily symmetric).
XState random_xstate(std::uint64_t seed);

}  // namespace qdiscord
