#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdiscord/xstate.hpp"

using namespace qdiscord;
using std::numbers::ln2;

namespace {

// Werner state p|psi-><psi-| + (1-p) I/4.
double werner_discord(double p) {
  return (1 - p) / 4 * std::log(1 - p) - (1 + p) / 2 * std::log(1 + p) +
         (1 + 3 * p) / 4 * std::log(1 + 3 * p);
}

}  // namespace

TEST_CASE("from_correlators builds the expected matrix elements") {
  const auto c = PairCorrelators{0.2, 0.2, 0.3, 0.1, 0.05};
  const auto s = from_correlators(c);
  CHECK(s.a == doctest::Approx((1 + 0.4 + 0.05) / 4));
  CHECK(s.b == doctest::Approx((1 - 0.05) / 4));
  CHECK(s.c == doctest::Approx((1 - 0.05) / 4));
  CHECK(s.d == doctest::Approx((1 - 0.4 + 0.05) / 4));
  CHECK(s.alpha == doctest::Approx(0.05));
  CHECK(s.beta == doctest::Approx(0.1));
}

TEST_CASE("invalid correlators are rejected") {
  CHECK_THROWS_AS(from_correlators(PairCorrelators{0, 0, 1.5, 0, 0}), ArgumentError);
  // |beta| > sqrt(bc)
  CHECK_THROWS_AS(from_correlators(PairCorrelators::symmetric(0.0, 0.9, 0.9, 0.5)),
                  NotAStateError);
  CHECK_THROWS_AS(discord_analytic(PairCorrelators{0.1, 0.2, 0.1, 0.1, 0.0}), UnsupportedError);
}

TEST_CASE("closed-form eigenvalues match dense diagonalization") {
  for (const auto& c : {PairCorrelators::symmetric(0.2, 0.3, 0.1, 0.05),
                        PairCorrelators::symmetric(-0.4, 0.1, -0.2, 0.3),
                        PairCorrelators::symmetric(0.0, -0.5, -0.5, -0.5)}) {
    const auto s = from_correlators(c);
    auto lambda = xstate_eigenvalues(s, c);
    std::sort(lambda.begin(), lambda.end());
    const auto dense = eigvalsh(to_density_matrix(s).entries());
    for (int k = 0; k < 4; ++k) CHECK(lambda[k] == doctest::Approx(dense[k]).epsilon(1e-12));
    const std::vector<std::size_t> keep_b{1};
    const double cond = von_neumann_entropy(to_density_matrix(s)) -
                        von_neumann_entropy(partial_trace(to_density_matrix(s), keep_b));
    CHECK(conditional_entropy(s, c) == doctest::Approx(cond).epsilon(1e-12));
  }
}

TEST_CASE("Bell and Werner states") {
  const auto bell = PairCorrelators::symmetric(0.0, 1.0, -1.0, 1.0);
  CHECK(discord_analytic(bell) == doctest::Approx(ln2));
  CHECK(xstate_mutual_information(bell) == doctest::Approx(2 * ln2));
  for (double p : {0.1, 0.4, 0.8, 0.99}) {
    const auto w = PairCorrelators::symmetric(0.0, -p, -p, -p);
    CHECK(discord_analytic(w) == doctest::Approx(werner_discord(p)).epsilon(1e-12));
  }
  CHECK(discord_analytic(PairCorrelators::symmetric(0.3, 0.0, 0.0, 0.09)) < 1e-15);
}

TEST_CASE("lemma1 margin") {
  // Product-like diagonal state with no coherence: margin is -|sqrt(ad)-sqrt(bc)|.
  const auto s = from_correlators(PairCorrelators::symmetric(0.5, 0.0, 0.0, 0.0));
  CHECK(lemma1_margin(s) < 0.0);
  CHECK_FALSE(lemma1_holds(s));
  CHECK_THROWS_AS(discord_analytic(PairCorrelators::symmetric(0.5, 0.0, 0.0, 0.0)),
                  ConditionViolatedError);
  // sz = 0 and zz = 0: ad = bc, so any coherence satisfies the condition.
  CHECK(lemma1_holds(from_correlators(PairCorrelators::symmetric(0.0, 1e-3, 0.0, 0.0))));
}

TEST_CASE("extended precision agrees with double and resolves tiny discord") {
  const auto c = PairCorrelators::symmetric(0.25, 0.3, -0.05, 0.1);
  const double d = discord_analytic(c);
  const Extended e = discord_analytic(widen<Extended>(c));
  CHECK(to_double(e) == doctest::Approx(d).epsilon(1e-13));

  // sz = zz = 0, xx = yy = eps gives D = eps^2 / 2 + O(eps^4), far below
  // double resolution at eps = 1e-15.
  const Extended eps("1e-15");
  const auto tiny = BasicPairCorrelators<Extended>::symmetric(Extended(0), eps, eps, Extended(0));
  const Extended dt = discord_analytic(tiny);
  CHECK(dt > 0);
  CHECK(to_double(dt / (eps * eps)) == doctest::Approx(0.5).epsilon(1e-12));
}
