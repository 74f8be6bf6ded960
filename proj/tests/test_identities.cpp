#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ymh/identities.hpp"
#include "ymh/presets.hpp"

using namespace ymh;

namespace {

HitchinPairState rnd_state(int pts, int n, std::uint64_t seed) {
  return preset_random(TorusGrid(n, pts), 2, seed, 2, 0.5);
}

GradedForm rnd_graded(const TorusGrid& g, int degree, std::uint64_t seed) {
  GradedForm out = GradedForm::zero(g, 2, degree);
  std::uint64_t k = seed;
  for (EndForm& part : out.parts)
    part = random_bandlimited(g, 2, part.p(), part.q(), ++k, 2, 0.5);
  return out;
}

}  // namespace

TEST_CASE("Kaehler identities hold to machine precision") {
  for (int n : {1, 2}) {
    const TorusGrid g(n, 8);
    const HitchinPairState s = rnd_state(8, n, 47);
    for (int k = 1; k <= (n == 1 ? 2 : 3); ++k)
      CHECK(kahler_residual(s, rnd_graded(g, k, 50 + k)) < 1e-11);
  }
}

TEST_CASE("Laplacian gaps converge at order 2") {
  auto run = [](auto&& fn) {
    std::vector<double> rs;
    // the band-limited inputs only reach the asymptotic regime from 16 up
    for (int pts : {16, 32, 64}) rs.push_back(fn(pts));
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
      const double rate = std::log(rs[i] / rs[i + 1]) / std::log(2.0);
      CHECK(rate > 1.7);
      CHECK(rate < 2.3);
    }
  };
  SUBCASE("Chern gap") {
    run([](int pts) {
      return laplacian_gap_chern_residual(
          rnd_state(pts, 1, 53),
          random_bandlimited(TorusGrid(1, pts), 2, 0, 0, 54, 2, 0.5));
    });
  }
  SUBCASE("Hitchin-Simpson gap") {
    run([](int pts) {
      return laplacian_gap_hs_residual(
          rnd_state(pts, 1, 55),
          random_bandlimited(TorusGrid(1, pts), 2, 0, 0, 56, 2, 0.5));
    });
  }
}

TEST_CASE("Bianchi identity") {
  SUBCASE("vanishes identically on a surface") {
    CHECK(bianchi_residual(rnd_state(8, 1, 57)) == 0.0);
  }
  SUBCASE("decays on holomorphic pairs on n = 2") {
    // the identity only holds when the holomorphy and integrability residuals
    // vanish, so the input must come from the gauge-transformed preset; the
    // rate climbs toward 2 from below at these coarse resolutions and the
    // asymptotic [1.7, 2.3] window is pinned on 16/32 by the acceptance suite
    const double r8 = bianchi_residual(preset_holomorphic(TorusGrid(2, 8), 58, 1, 0.5));
    const double r16 = bianchi_residual(preset_holomorphic(TorusGrid(2, 16), 58, 1, 0.5));
    const double rate = std::log(r8 / r16) / std::log(2.0);
    CHECK(rate > 1.4);
    CHECK(rate < 2.3);
  }
}

TEST_CASE("strong-pair equivalence") {
  SUBCASE("nilpotent oracle") {
    const StrongEquivalence se =
        strong_equivalence(preset_nilpotent(TorusGrid(1, 16), 1.0));
    // both routes measure ||i d'(LT) - ... || whose square is 2 * 32
    CHECK(se.route_reduced == doctest::Approx(8.0).epsilon(1e-10));
    CHECK(se.route_adjoint == doctest::Approx(8.0).epsilon(1e-10));
    CHECK(se.gap < 1e-10);
  }
  SUBCASE("the two routes coincide to machine precision") {
    for (int pts : {8, 16, 32}) {
      const StrongEquivalence se = strong_equivalence(rnd_state(pts, 1, 59));
      CHECK(se.gap < 1e-11 * (1.0 + se.route_reduced));
    }
  }
}

TEST_CASE("functional decomposition on a surface, order 2") {
  const double r16 = functional_decomposition_residual(rnd_state(16, 1, 61));
  const double r32 = functional_decomposition_residual(rnd_state(32, 1, 61));
  const double r64 = functional_decomposition_residual(rnd_state(64, 1, 61));
  for (double rate : {std::log(r16 / r32) / std::log(2.0),
                      std::log(r32 / r64) / std::log(2.0)}) {
    CHECK(rate > 1.7);
    CHECK(rate < 2.3);
  }
}

TEST_CASE("conformal shift") {
  SUBCASE("constant u leaves no shift") {
    const HitchinPairState s = rnd_state(8, 1, 63);
    const std::vector<double> u(s.grid().sites(), 1.3);
    CHECK(conformal_shift_residual(s, u) < 1e-11);
  }
  SUBCASE("varying u converges at order 2") {
    double prev = 0.0;
    for (int pts : {16, 32, 64}) {
      const TorusGrid g(1, pts);
      const double r = conformal_shift_residual(
          rnd_state(pts, 1, 65), random_scalar_bandlimited(g, 66, 2, 0.5));
      if (prev > 0.0) {
        const double rate = std::log(prev / r) / std::log(2.0);
        CHECK(rate > 1.7);
        CHECK(rate < 2.3);
      }
      prev = r;
    }
  }
}

TEST_CASE("sweep_identity classifies and fits rates") {
  const IdentityReport exact = sweep_identity(
      "zero", {8, 16, 32}, [](int) { return 1e-15; }, 1.0);
  CHECK(exact.exactness_class == "machine-exact");
  CHECK(exact.rates.size() == 2);

  const IdentityReport o2 = sweep_identity(
      "quadratic", {8, 16, 32}, [](int pts) { return 1.0 / (pts * pts); }, 1.0);
  CHECK(o2.exactness_class == "order-2");
  CHECK(o2.rates[0] == doctest::Approx(2.0));

  const IdentityReport bad = sweep_identity(
      "growing", {8, 16}, [](int pts) { return pts == 8 ? 1.0 : 10.0; }, 1.0);
  CHECK(bad.exactness_class == "diverging");

  const IdentityReport single =
      sweep_identity("one", {16}, [](int) { return 0.5; }, 1.0);
  CHECK(single.rates.empty());
}
