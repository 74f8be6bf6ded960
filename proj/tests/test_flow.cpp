#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ymh/flow.hpp"
#include "ymh/presets.hpp"

using namespace ymh;

TEST_CASE("YMH values on closed-form states") {
  const TorusGrid g(1, 16);
  CHECK(ymh_surface(preset_trivial(g, 2)) == doctest::Approx(0.0));
  const double c = 0.8;
  CHECK(ymh_surface(preset_nilpotent(g, c)) ==
        doctest::Approx(8.0 * c * c * c * c).epsilon(1e-12));
}

TEST_CASE("moment maps on a surface") {
  const TorusGrid g(1, 12);
  const HitchinPairState s = preset_random(g, 2, 23, 2, 0.5);
  const MomentMaps mu = moment_maps(s);
  CHECK(norm(dagger(mu.mu_I) + mu.mu_I) < 1e-11 * (1.0 + norm(mu.mu_I)));
  // nilpotent: mu_J and mu_K vanish (d''phi = d'phi* = 0 for constant phi)
  const MomentMaps mu0 = moment_maps(preset_nilpotent(g, 1.0));
  CHECK(norm(mu0.mu_J) < 1e-13);
  CHECK(norm(mu0.mu_K) < 1e-13);
}

TEST_CASE("nilpotent flow tracks c(t) = (1+8t)^{-1/2}") {
  const TorusGrid g(1, 16);
  HitchinPairState s = preset_nilpotent(g, 1.0);
  const FlowTrajectory traj = run_flow(s, 0.1, DtPolicy::fixed(1e-3));
  const double c_end = 1.0 / std::sqrt(1.0 + 8.0 * 0.1);
  const double got = std::abs(traj.final_state.phi.at(0, 0)[1]);
  CHECK(std::abs(got - c_end) < 1e-8);
  for (const FlowSample& smp : traj.samples) {
    const double c4 = std::pow(1.0 + 8.0 * smp.t, -2.0);
    CHECK(std::abs(smp.ymh - 8.0 * c4) < 1e-6 * (1.0 + smp.ymh));
  }
}

TEST_CASE("adaptive flow is monotone and keeps holomorphy") {
  const TorusGrid g(1, 16);
  // start from a Hitchin pair: a = 0 keeps d''phi = delbar phi controllable
  HitchinPairState s(EndForm(g, 2, 0, 1),
                     random_bandlimited(g, 2, 1, 0, 29, 1, 0.3));
  // project to exact holomorphy: constant phi only
  // (band-limited phi is not delbar-closed, so use its mean instead)
  EndForm phi(g, 2, 1, 0);
  {
    std::vector<cplx> mean(phi.block(), cplx(0, 0));
    for (std::size_t site = 0; site < g.sites(); ++site)
      for (std::size_t e = 0; e < phi.block(); ++e)
        mean[e] += s.phi.at(0, site)[e];
    for (auto& m : mean) m /= static_cast<double>(g.sites());
    for (std::size_t site = 0; site < g.sites(); ++site)
      for (std::size_t e = 0; e < phi.block(); ++e) phi.at(0, site)[e] = mean[e];
  }
  s = HitchinPairState(EndForm(g, 2, 0, 1), phi);
  CHECK(norm(d_doubleprime(s, s.phi)) < 1e-12);

  const FlowTrajectory traj = run_flow(s, 0.05, DtPolicy{});
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].ymh <= traj.samples[i - 1].ymh + 1e-12);
  const double h2 = g.spacing() * g.spacing();
  for (const FlowSample& smp : traj.samples)
    CHECK(smp.holomorphy <= 10.0 * h2 + 1e-10);
}

TEST_CASE("first variation matches the finite-difference derivative") {
  const TorusGrid g(1, 16);
  const HitchinPairState s = preset_random(g, 2, 31, 2, 0.4);
  const DeformationPair def = deformation_random(g, 2, 32, 2, 0.4);
  const double exact = first_variation(s, def);
  const double fd = directional_derivative_fd(s, def, 1e-5);
  CHECK(std::abs(exact - fd) < 1e-6 * (1.0 + std::abs(fd)));
}

TEST_CASE("first variation on the nilpotent ray") {
  const TorusGrid g(1, 8);
  const double c = 0.9;
  const HitchinPairState s = preset_nilpotent(g, c);
  // direction = d/dc of the preset: alpha = 0, beta = N dz
  DeformationPair def{EndForm(g, 2, 0, 1), EndForm(g, 2, 1, 0)};
  fill_constant(def.beta, 0, {cplx(0, 0), cplx(1, 0), cplx(0, 0), cplx(0, 0)});
  // YMH(c) = 8 c^4 so the derivative along the ray is 32 c^3
  CHECK(first_variation(s, def) == doctest::Approx(32.0 * c * c * c).epsilon(1e-10));
}

TEST_CASE("fixed and adaptive runs agree at t = 0 and log their steps") {
  const TorusGrid g(1, 8);
  const HitchinPairState s = preset_nilpotent(g, 1.0);
  const FlowTrajectory traj = run_flow(s, 0.01, DtPolicy{});
  CHECK(!traj.step_log.empty());
  for (const auto& [dt, accepted] : traj.step_log) {
    CHECK(dt > 0.0);
    CHECK(accepted);  // the exact ray never triggers a halving
  }
  CHECK(traj.samples.front().t == doctest::Approx(0.0));
  CHECK(traj.samples.back().t == doctest::Approx(0.01));
}
