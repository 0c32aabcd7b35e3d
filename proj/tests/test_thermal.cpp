#include <cmath>
#include <vector>

#include "doctest.h"
#include "qdiscord/thermal.hpp"

using namespace qdiscord;

namespace {

double max_abs_diff(const RMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

// Bond terms plus explicit single-site fields.
CMatrix direct_hamiltonian(const CMatrix& bond, double h, std::size_t n,
                           const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const std::size_t dim = std::size_t{1} << n;
  CMatrix out(dim, dim);
  for (const auto& [i, j] : edges) {
    const std::size_t sites[] = {i, j};
    out += embed_operator(bond, sites, n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t site[] = {k};
    out -= embed_operator(pauli::z(), site, n) * Complex(h);
  }
  return out;
}

double commutator_norm(const RMatrix& h, const CMatrix& rho) {
  const CMatrix hc = to_complex(h);
  return frobenius_norm(hc * rho - rho * hc);
}

}  // namespace

TEST_CASE("lattice construction") {
  const auto heis = build_chain_hamiltonian(XXZ{1.0}, 2, Geometry::open_chain);
  REQUIRE(heis.edges.size() == 1);
  const CMatrix expected = kron(pauli::x(), pauli::x()) + kron(pauli::y(), pauli::y()) +
                           kron(pauli::z(), pauli::z());
  CHECK(frobenius_norm(heis.edges[0].term - expected) < 1e-15);

  CHECK(build_chain_hamiltonian(TFIM{1.0}, 4, Geometry::periodic_chain).edges.size() == 4);
  CHECK(build_chain_hamiltonian(TFIM{1.0}, 6, Geometry::grid, 3).edges.size() == 7);
  CHECK_THROWS_AS(build_chain_hamiltonian(TFIM{1.0}, 13, Geometry::open_chain), ResourceError);
  CHECK_THROWS_AS(build_chain_hamiltonian(TFIM{1.0}, 6, Geometry::grid, 4), ArgumentError);
  CHECK_THROWS_AS(build_chain_hamiltonian(TFIM{1.0}, 2, Geometry::periodic_chain),
                  ArgumentError);
}

TEST_CASE("field splitting reproduces the on-site fields") {
  const double h = 0.7;
  const CMatrix bond = kron(pauli::x(), pauli::x()) * Complex(-1.0);
  SUBCASE("open chain") {
    const auto lat = build_chain_hamiltonian(TFIM{h}, 3, Geometry::open_chain);
    CHECK(max_abs_diff(dense_hamiltonian(lat), direct_hamiltonian(bond, h, 3, {{0, 1}, {1, 2}})) <
          1e-14);
  }
  SUBCASE("periodic chain") {
    const auto lat = build_chain_hamiltonian(TFIM{h}, 4, Geometry::periodic_chain);
    CHECK(max_abs_diff(dense_hamiltonian(lat),
                       direct_hamiltonian(bond, h, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})) < 1e-14);
  }
  SUBCASE("grid") {
    const auto lat = build_chain_hamiltonian(TFIM{h}, 4, Geometry::grid, 2);
    CHECK(max_abs_diff(dense_hamiltonian(lat),
                       direct_hamiltonian(bond, h, 4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})) < 1e-14);
  }
}

TEST_CASE("block diagonalization matches the dense spectrum") {
  const auto lat = build_chain_hamiltonian(XXZ{0.5}, 6, Geometry::open_chain);
  const auto s = diagonalize(lat);
  CHECK(s.blocks.size() == 7);  // magnetization sectors
  const auto dense = eigvalsh(dense_hamiltonian(lat));
  const auto blocked = s.values();
  REQUIRE(dense.size() == blocked.size());
  for (std::size_t k = 0; k < dense.size(); ++k) CHECK(blocked[k] == doctest::Approx(dense[k]));

  const auto serial = diagonalize(lat, false).values();
  for (std::size_t k = 0; k < dense.size(); ++k)
    CHECK(serial[k] == doctest::Approx(blocked[k]).epsilon(1e-12));
}

TEST_CASE("thermal states") {
  const auto lat = build_chain_hamiltonian(TFIM{0.8}, 5, Geometry::open_chain);
  const auto s = diagonalize(lat);
  const RMatrix h = dense_hamiltonian(lat);

  const auto hot = thermal_state(s, 0.0);
  for (std::size_t i = 0; i < hot.dim(); ++i) CHECK(hot(i, i).real() == doctest::Approx(1.0 / 32));

  for (double beta : {0.3, 1.0, 5.0}) {
    const auto rho = thermal_state(s, beta);
    CHECK(std::abs(rho.entries().trace().real() - 1.0) < 1e-12);
    CHECK(commutator_norm(h, rho.entries()) < 1e-10);
  }

  const auto ground = thermal_state(s, kGroundState);
  const CMatrix sq = ground.entries() * ground.entries();
  CHECK(frobenius_norm(sq - ground.entries()) < 1e-10);  // rank-1 projector
  CHECK(thermal_entropy(s, kGroundState) == doctest::Approx(0.0));
  CHECK(thermal_entropy(s, 0.0) == doctest::Approx(5 * std::log(2.0)));
  CHECK_THROWS_AS(thermal_state(s, -1.0), ArgumentError);
}

TEST_CASE("degenerate ground space gets equal weights") {
  // Classical Ising chain: two ground states.
  const auto s = diagonalize(build_chain_hamiltonian(TFIM{0.0}, 4, Geometry::open_chain));
  const auto rho = thermal_state(s, kGroundState);
  CHECK(thermal_entropy(s, kGroundState) == doctest::Approx(std::log(2.0)));
  CHECK(rho.entries().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("thermal correlators match exact diagonalization of the two-site marginal") {
  // Ground state of a short TFIM chain against itself through the spectrum.
  const auto lat = build_chain_hamiltonian(TFIM{0.5}, 8, Geometry::open_chain);
  const auto rho = thermal_state(lat, kGroundState);
  const std::size_t pair[] = {3, 4};
  const auto two = partial_trace(rho, pair);
  const CMatrix zz = kron(pauli::z(), pauli::z());
  const CMatrix xx = kron(pauli::x(), pauli::x());
  double exx = 0.0, ezz = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      exx += (xx(i, j) * two(j, i)).real();
      ezz += (zz(i, j) * two(j, i)).real();
    }
  // Deep in the ferromagnet the bond is nearly saturated.
  CHECK(exx > 0.9);
  CHECK(ezz > 0.0);
}

TEST_CASE("area-law bound") {
  const auto heis = build_chain_hamiltonian(XXZ{1.0}, 4, Geometry::open_chain);
  const std::size_t left[] = {0, 1};
  CHECK(area_law_bound(heis, left, 0.0) == 0.0);
  CHECK(area_law_bound(heis, left, 1.0) == doctest::Approx(4.0 * std::sqrt(3.0)));
  CHECK(std::isinf(area_law_bound(heis, left, kGroundState)));

  const auto xx = build_chain_hamiltonian(XXZ{0.0}, 4, Geometry::open_chain);
  CHECK(area_law_bound(xx, left, 0.5) == doctest::Approx(2.0 * std::sqrt(2.0)));

  const std::size_t middle[] = {1, 2};
  CHECK(boundary_edges(heis, middle).size() == 2);
  const std::size_t bad[] = {0, 0};
  CHECK_THROWS_AS(area_law_bound(heis, bad, 1.0), ArgumentError);
  const std::size_t all[] = {0, 1, 2, 3};
  CHECK_THROWS_AS(area_law_bound(heis, all, 1.0), ArgumentError);
}

TEST_CASE("area-law checks") {
  SUBCASE("infinite temperature") {
    const auto lat = build_chain_hamiltonian(XXZ{1.0}, 4, Geometry::open_chain);
    const std::size_t cut[] = {0, 1};
    const auto c = check_area_law(lat, cut, 0.0);
    CHECK(c.mutual_info == doctest::Approx(0.0));
    CHECK(c.bound == 0.0);
    CHECK(c.satisfied);
    CHECK_FALSE(c.free_energy_checked);
  }
  SUBCASE("Heisenberg chain, half cut") {
    const auto lat = build_chain_hamiltonian(XXZ{1.0}, 8, Geometry::open_chain);
    const std::size_t cut[] = {0, 1, 2, 3};
    const auto c = check_area_law(lat, cut, 1.0);
    CHECK(c.boundary_size == 1);
    CHECK(c.bound == doctest::Approx(2.0 * std::sqrt(12.0)));
    CHECK(c.mutual_info > 0.0);
    CHECK(c.satisfied);
    CHECK(c.free_energy_ok);
    CHECK(c.free_energy_joint <= c.free_energy_product);
  }
  SUBCASE("single-site B carries the oracle discord") {
    const auto lat = build_chain_hamiltonian(TFIM{1.0}, 6, Geometry::open_chain);
    const std::size_t cut[] = {0, 1, 2, 3, 4};
    const auto c = check_area_law(lat, cut, 2.0);
    REQUIRE(c.oracle_checked);
    CHECK(c.oracle_discord > 0.0);
    CHECK(c.oracle_discord <= c.mutual_info);
    CHECK(c.mutual_info <= c.bound);
    CHECK(c.discord_ok);

    const std::size_t right[] = {1, 2, 3, 4, 5};
    const auto d = check_area_law(lat, right, 2.0);
    REQUIRE(d.oracle_checked);
    // Reflection symmetry of the open chain.
    CHECK(d.oracle_discord == doctest::Approx(c.oracle_discord).epsilon(1e-6));
    CHECK(d.mutual_info == doctest::Approx(c.mutual_info).epsilon(1e-9));
  }
}

TEST_CASE("contiguous cuts") {
  const auto cuts = contiguous_cuts(4);
  CHECK(cuts.size() == 9);
  CHECK(cuts.front() == std::vector<std::size_t>{0});
  CHECK(cuts.back() == std::vector<std::size_t>{3});
}

TEST_CASE("sweep: serial and parallel agree, every check holds") {
  const auto lat = build_chain_hamiltonian(XYField{0.5, 0.7}, 6, Geometry::open_chain);
  const double betas[] = {0.1, 1.0, 5.0};
  const auto cuts = contiguous_cuts(6);
  const auto a = area_law_sweep(lat, betas, cuts, {}, true);
  const auto b = area_law_sweep(lat, betas, cuts, {}, false);
  REQUIRE(a.size() == 3 * cuts.size());
  REQUIRE(b.size() == a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].mutual_info == doctest::Approx(b[k].mutual_info).epsilon(1e-10));
    CHECK(a[k].satisfied);
    CHECK(a[k].free_energy_ok);
    CHECK(a[k].discord_ok);
  }
}

TEST_CASE("periodic and grid geometries satisfy the bound") {
  const double betas[] = {0.5, 2.0};
  for (const auto& lat : {build_chain_hamiltonian(XXZ{0.5}, 6, Geometry::periodic_chain),
                          build_chain_hamiltonian(TFIM{1.0}, 6, Geometry::grid, 3)}) {
    for (const auto& c : area_law_sweep(lat, betas, contiguous_cuts(6))) {
      CHECK(c.satisfied);
      CHECK(c.free_energy_ok);
    }
  }
}

TEST_CASE("half-chain mutual information saturates with chain length") {
  const double i6 = half_chain_mutual_information(TFIM{1.0}, 6, 2.0);
  const double i8 = half_chain_mutual_information(TFIM{1.0}, 8, 2.0);
  const double i10 = half_chain_mutual_information(TFIM{1.0}, 10, 2.0);
  CHECK(i8 > i6);
  CHECK(i10 > i8);
  CHECK(i10 - i8 < i8 - i6);
}
