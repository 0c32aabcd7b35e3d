#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "qdiscord/chain_models.hpp"
#include "qdiscord/discord_oracle.hpp"
#include "qdiscord/hermitian.hpp"

// Exact diagonalization of small two-local spin Hamiltonians, thermal states
// and the mutual-information area-law check.
namespace qdiscord {

inline constexpr std::size_t kMaxSites = 12;
inline constexpr double kGroundState = std::numeric_limits<double>::infinity();
inline constexpr double kAreaLawSlack = 1e-9;

enum class Geometry { open_chain, periodic_chain, grid };

// Two-local term on sites (i, j), i < j; the 4x4 matrix acts on i (\otimes) j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  CMatrix term;
};

struct LatticeHamiltonian {
  std::size_t n_sites = 0;
  std::vector<Edge> edges;
  Geometry geometry = Geometry::open_chain;
  std::size_t grid_cols = 0;  // grid only; sites are row-major
};

// Throws ValidationError for non-Hermitian or malformed terms and
// ResourceError for more than 12 sites.
void validate(const LatticeHamiltonian& h);

// Bond terms of the model on the chosen geometry. Single-site fields are
// split over the incident edges, weight h/degree on each, so the sum of the
// edge terms is the full Hamiltonian. grid_cols is required for grids.
LatticeHamiltonian build_chain_hamiltonian(const ModelSpec& m, std::size_t n, Geometry geometry,
                                           std::size_t grid_cols = 0);

// 2^n x 2^n matrix of an operator acting on the listed sites (site 0 is the
// most significant bit).
CMatrix embed_operator(const CMatrix& op, std::span<const std::size_t> sites, std::size_t n);

// Sum of the embedded edge terms; the model Hamiltonians are real.
RMatrix dense_hamiltonian(const LatticeHamiltonian& h);

// Eigen-decomposition restricted to the connected blocks of H's nonzero
// pattern.
struct SpectrumBlock {
  std::vector<std::size_t> basis;  // basis states of the block
  std::vector<double> values;
  RMatrix vectors;  // columns pair with values
};

struct Spectrum {
  std::size_t n_sites = 0;
  std::vector<SpectrumBlock> blocks;
  double ground_energy() const;
  std::vector<double> values() const;  // ascending
};

// parallel = false uses the serial cyclic Jacobi reference.
Spectrum diagonalize(const LatticeHamiltonian& h, bool parallel = true);

// Boltzmann weights ordered like the blocks' values. beta = kGroundState
// spreads equal weight over the ground space.
std::vector<std::vector<double>> boltzmann_weights(const Spectrum& s, double beta);

// e^{-beta H} / tr e^{-beta H}; beta = kGroundState gives the normalized
// ground-space projector.
DensityMatrix thermal_state(const Spectrum& s, double beta);
DensityMatrix thermal_state(const LatticeHamiltonian& h, double beta);

// -tr rho ln rho of the thermal state, from the weights.
double thermal_entropy(const Spectrum& s, double beta);

// Edges with exactly one end in the cut.
std::vector<std::size_t> boundary_edges(const LatticeHamiltonian& h,
                                        std::span<const std::size_t> cut);

// 2 beta |boundary| max ||h_ij||_2 over boundary edges (Frobenius norm).
// Zero for an empty boundary; infinite for beta = kGroundState with a
// nonempty boundary.
double area_law_bound(const LatticeHamiltonian& h, std::span<const std::size_t> cut, double beta);

struct AreaLawOptions {
  // Sites up to which single-site-B cuts also get the oracle discord.
  std::size_t oracle_max_sites = 6;
  OracleOptions oracle{16, 32, 1e-7, false, MeasuredSide::second};
};

struct AreaLawCheck {
  double beta = 0.0;
  std::vector<std::size_t> cut;
  std::size_t boundary_size = 0;
  double max_term_norm = 0.0;
  double bound = 0.0;
  double mutual_info = 0.0;
  double discord_upper = 0.0;  // I, which bounds the discord
  bool satisfied = false;      // mutual_info <= bound + 1e-9

  // F(rho) <= F(rho_A (x) rho_B); not evaluated at beta = 0 or infinity.
  bool free_energy_checked = false;
  double free_energy_joint = 0.0;
  double free_energy_product = 0.0;
  bool free_energy_ok = true;

  // Single-site B only: oracle discord with B measured.
  bool oracle_checked = false;
  double oracle_discord = 0.0;
  bool discord_ok = true;  // oracle_discord <= mutual_info + 1e-9
};

// Throws ArgumentError for a cut that is empty, covers every site or
// repeats a site.
AreaLawCheck check_area_law(const LatticeHamiltonian& h, std::span<const std::size_t> cut,
                            double beta, const AreaLawOptions& options = {});
AreaLawCheck check_area_law(const LatticeHamiltonian& h, const Spectrum& s,
                            std::span<const std::size_t> cut, double beta,
                            const AreaLawOptions& options = {});

// Every contiguous proper interval [a, b) of sites 0..n-1.
std::vector<std::vector<std::size_t>> contiguous_cuts(std::size_t n);

// All (beta, cut) checks, beta-major. parallel = false is the serial
// reference.
std::vector<AreaLawCheck> area_law_sweep(const LatticeHamiltonian& h,
                                         std::span<const double> betas,
                                         const std::vector<std::vector<std::size_t>>& cuts,
                                         const AreaLawOptions& options = {},
                                         bool parallel = true);

// I(A:B) for A = the first n/2 sites of an open chain.
double half_chain_mutual_information(const ModelSpec& m, std::size_t n, double beta);

}  // namespace qdiscord
