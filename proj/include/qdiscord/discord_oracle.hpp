#pragma once

#include <array>
#include <cstddef>

#include "qdiscord/hermitian.hpp"

// Brute-force quantum discord: minimize the post-measurement conditional
// entropy over all rank-1 projective measurements on one qubit.
namespace qdiscord {

struct MeasurementAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

// Which qubit the measurement acts on.
enum class MeasuredSide { second, first };

struct OracleOptions {
  std::size_t n_theta = 64;
  std::size_t n_phi = 128;
  double angle_tolerance = 1e-7;
  bool parallel = true;
  MeasuredSide side = MeasuredSide::second;
};

struct DiscordResult {
  double discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  MeasurementAngles argmin;
  std::array<std::size_t, 2> grid_resolution{0, 0};
};

// (Pi_+, Pi_-) projecting onto +-(sin t cos p, sin t sin p, cos t).
std::array<CMatrix, 2> measurement_projectors(MeasurementAngles m);

// sum_i p_i S(rho_A^i) after measuring the second qubit along m. Outcomes
// with p_i < 1e-14 contribute nothing.
double measured_conditional_entropy(const DensityMatrix& rho, MeasurementAngles m);

DiscordResult discord_numeric(const DensityMatrix& rho, const OracleOptions& options = {});
double classical_correlation(const DensityMatrix& rho, const OracleOptions& options = {});

// Same optimization for a (d_A x 2) state whose last factor is the measured
// qubit. rho may carry any subsystem split; everything except the last
// qubit is treated as A. Costs two d_A x d_A diagonalizations per angle.
DiscordResult discord_numeric_general(const DensityMatrix& rho,
                                      const OracleOptions& options = {16, 32, 1e-7, true,
                                                                     MeasuredSide::second});

// Canonical representative of a measurement axis: theta in [0, pi/2],
// phi in [0, 2 pi).
MeasurementAngles canonical_angles(MeasurementAngles m);

}  // namespace qdiscord
