#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qdiscord/hermitian.hpp"
#include "support/random_states.hpp"

using namespace qdiscord;
using std::numbers::ln2;

namespace {

DensityMatrix bell_phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> psi{s, 0.0, 0.0, s};
  return DensityMatrix::pure(psi, {2, 2});
}

DensityMatrix diagonal_state(std::vector<double> p, std::vector<std::size_t> dims) {
  std::vector<Complex> c(p.begin(), p.end());
  return DensityMatrix(CMatrix::diagonal(c), std::move(dims));
}

}  // namespace

TEST_CASE("eigvalsh") {
  SUBCASE("identity") {
    const auto v = eigvalsh(CMatrix::identity(4));
    for (double x : v) CHECK(x == doctest::Approx(1.0));
  }
  SUBCASE("diagonal is sorted ascending") {
    const auto v = eigvalsh(CMatrix{{0.9, 0.0}, {0.0, 0.1}});
    CHECK(v[0] == doctest::Approx(0.1));
    CHECK(v[1] == doctest::Approx(0.9));
  }
  SUBCASE("eigenvalue sum equals trace") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix m = testing::random_hermitian(rng, 4);
      const auto v = eigvalsh(m);
      double sum = 0.0;
      for (double x : v) sum += x;
      CHECK(std::abs(sum - m.trace().real()) < 1e-10);
    }
  }
  SUBCASE("reconstruction from eigh") {
    std::mt19937_64 rng(4);
    const CMatrix m = testing::random_hermitian(rng, 12);
    const auto es = eigh(m);
    CMatrix lambda = CMatrix::diagonal(std::vector<Complex>(es.values.begin(), es.values.end()));
    const CMatrix back = es.vectors * lambda * es.vectors.adjoint();
    CHECK(frobenius_norm(back - m) < 1e-10);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(eigvalsh(CMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(eigvalsh(CMatrix{{1.0, 0.5}, {0.0, 1.0}}), ValidationError);
  }
}

TEST_CASE("density matrix invariants are enforced") {
  CHECK_THROWS_AS(DensityMatrix(CMatrix{{0.6, 0.0}, {0.0, 0.6}}), NotAStateError);
  CHECK_THROWS_AS(DensityMatrix(CMatrix{{1.5, 0.0}, {0.0, -0.5}}), NotAStateError);
  CHECK_THROWS_AS(DensityMatrix(CMatrix{{0.5, 0.1}, {0.2, 0.5}}), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(4), {2, 3}), DimensionError);
  CHECK_NOTHROW(DensityMatrix(CMatrix{{0.5, 0.5}, {0.5, 0.5}}));
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed({2})) == doctest::Approx(ln2));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed({2, 2})) == doctest::Approx(2 * ln2));
  CHECK(std::abs(von_neumann_entropy(bell_phi_plus())) < 1e-12);
  const std::vector<Complex> psi{0.6, Complex(0.0, 0.8)};
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::pure(psi, {2}))) < 1e-12);
  // Tiny negative eigenvalues count as zero; larger ones are rejected.
  const std::vector<double> ok{1.0 + 5e-11, -5e-11};
  CHECK(entropy_of_spectrum(ok) == doctest::Approx(-(1.0 + 5e-11) * std::log(1.0 + 5e-11)));
  const std::vector<double> bad{1.1, -0.1};
  CHECK_THROWS_AS(entropy_of_spectrum(bad), NotAStateError);
}

TEST_CASE("partial trace") {
  std::mt19937_64 rng(8);
  SUBCASE("product state factorizes") {
    const auto a = testing::random_density(rng, {2});
    const auto b = testing::random_density(rng, {3});
    const auto ab = tensor_product(a, b);
    const std::vector<std::size_t> keep_a{0}, keep_b{1};
    CHECK(frobenius_norm(partial_trace(ab, keep_a).entries() - a.entries()) < 1e-14);
    CHECK(frobenius_norm(partial_trace(ab, keep_b).entries() - b.entries()) < 1e-14);
  }
  SUBCASE("Bell marginals are maximally mixed") {
    const auto half = DensityMatrix::maximally_mixed({2});
    for (std::size_t k : {0u, 1u}) {
      const std::vector<std::size_t> keep{k};
      CHECK(frobenius_norm(partial_trace(bell_phi_plus(), keep).entries() - half.entries()) <
            1e-14);
    }
  }
  SUBCASE("maximally mixed stays maximally mixed") {
    const auto rho = DensityMatrix::maximally_mixed({2, 2, 2, 2});
    const std::vector<std::size_t> keep{1, 3};
    const auto r = partial_trace(rho, keep);
    CHECK(frobenius_norm(r.entries() - DensityMatrix::maximally_mixed({2, 2}).entries()) < 1e-15);
  }
  SUBCASE("trace preserved and keep order irrelevant") {
    const auto rho = testing::random_density(rng, {2, 3, 2});
    const std::vector<std::size_t> k1{2, 0}, k2{0, 2};
    const auto r1 = partial_trace(rho, k1);
    const auto r2 = partial_trace(rho, k2);
    CHECK(std::abs(r1.entries().trace().real() - 1.0) < 1e-12);
    CHECK(frobenius_norm(r1.entries() - r2.entries()) == 0.0);
  }
  SUBCASE("linear in rho") {
    const auto r = testing::random_density(rng, {2, 2, 2});
    const auto s = testing::random_density(rng, {2, 2, 2});
    CMatrix mix = r.entries() * Complex(0.3) + s.entries() * Complex(0.7);
    const DensityMatrix m(std::move(mix), {2, 2, 2}, DensityMatrix::Check::structure);
    const std::vector<std::size_t> keep{1};
    const CMatrix lhs = partial_trace(m, keep).entries();
    const CMatrix rhs = partial_trace(r, keep).entries() * Complex(0.3) +
                        partial_trace(s, keep).entries() * Complex(0.7);
    CHECK(frobenius_norm(lhs - rhs) < 1e-14);
  }
  SUBCASE("invalid keep sets") {
    const auto rho = DensityMatrix::maximally_mixed({2, 2});
    const std::vector<std::size_t> none, all{0, 1}, out_of_range{2};
    CHECK_THROWS_AS(partial_trace(rho, none), ArgumentError);
    CHECK_THROWS_AS(partial_trace(rho, all), ArgumentError);
    CHECK_THROWS_AS(partial_trace(rho, out_of_range), ArgumentError);
  }
}

TEST_CASE("trace distance carries no factor one half") {
  const auto zero = diagonal_state({1.0, 0.0}, {2});
  const auto one = diagonal_state({0.0, 1.0}, {2});
  const auto mixed = DensityMatrix::maximally_mixed({2});
  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
  CHECK(trace_distance(zero, one) == doctest::Approx(2.0));
  CHECK(trace_distance(mixed, zero) == doctest::Approx(1.0));
  CHECK_THROWS_AS(trace_distance(zero, DensityMatrix::maximally_mixed({2, 2})), ArgumentError);
}

TEST_CASE("mutual information") {
  std::mt19937_64 rng(9);
  const std::vector<std::size_t> a{0};
  const auto product = tensor_product(testing::random_density(rng, {2}),
                                      testing::random_density(rng, {2}));
  CHECK(std::abs(mutual_information(product, a)) < 1e-12);
  CHECK(mutual_information(bell_phi_plus(), a) == doctest::Approx(2 * ln2));
  CHECK(mutual_information(diagonal_state({0.5, 0, 0, 0.5}, {2, 2}), a) == doctest::Approx(ln2));
  const std::vector<std::size_t> none, both{0, 1};
  CHECK_THROWS_AS(mutual_information(product, none), ArgumentError);
  CHECK_THROWS_AS(mutual_information(product, both), ArgumentError);
}

TEST_CASE("property: entropy is additive on products") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = testing::random_density(rng, {2}, 1 + trial % 2);
    const auto b = testing::random_density(rng, {3}, 1 + trial % 3);
    const double lhs = von_neumann_entropy(tensor_product(a, b));
    CHECK(std::abs(lhs - von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-9);
  }
}

TEST_CASE("property: mutual information bounds") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t rank = 1 + static_cast<std::size_t>(trial % 6);
    const auto rho = testing::random_density(rng, {2, 3}, rank);
    const std::vector<std::size_t> a{0};
    const double info = mutual_information(rho, a);
    CHECK(info >= 0.0);
    CHECK(info <= 2.0 * std::log(2.0) + 1e-12);
  }
}

TEST_CASE("property: trace distance triangle inequality") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const auto r = testing::random_density(rng, {2, 2});
    const auto s = testing::random_density(rng, {2, 2}, 2);
    const auto t = testing::random_density(rng, {2, 2}, 1);
    CHECK(trace_distance(r, t) <= trace_distance(r, s) + trace_distance(s, t) + 1e-9);
  }
}
