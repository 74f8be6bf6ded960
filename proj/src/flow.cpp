#include "ymh/flow.hpp"

#include <cmath>

namespace ymh {

namespace {

double ymh_dispatch(const HitchinPairState& s) {
  return s.grid().n == 1 ? ymh_surface(s) : ymh_general(s, Integrand::full);
}

}  // namespace

double ymh_surface(const HitchinPairState& s) {
  if (s.grid().n != 1) throw std::invalid_argument("ymh_surface: requires n = 1");
  return norm_sq(theta(s)) + 4.0 * norm_sq(d_doubleprime(s, s.phi));
}

double ymh_general(const HitchinPairState& s, Integrand which) {
  const TorusGrid& g = s.grid();
  const ChernCurvature F = chern_curvature(s);
  EndForm p11 = F.f11;
  p11 += wedge_bracket(s.phi, s.phi_star());
  double total = 0.0;
  const EndForm phis = s.phi_star();
  if (which == Integrand::full) {
    p11 += d_doubleprime(s, s.phi);
    p11 += d_prime(s, phis);
  }
  total += norm_sq(p11);
  if (g.n > 1) {
    EndForm p20 = F.f20;
    p20 += d_prime(s, s.phi);
    EndForm p02 = F.f02;
    p02 += d_doubleprime(s, phis);
    total += norm_sq(p20) + norm_sq(p02);
  }
  return total;
}

MomentMaps moment_maps(const HitchinPairState& s) {
  if (s.grid().n != 1) throw std::invalid_argument("moment_maps: requires n = 1");
  EndForm dpp = d_doubleprime(s, s.phi);
  EndForm dp = d_prime(s, s.phi_star());
  EndForm mu_j = dpp + dp;
  mu_j *= cplx(0.0, -1.0);
  EndForm mu_k = dp - dpp;
  return {theta(s), std::move(mu_j), std::move(mu_k)};
}

FlowRhs flow_rhs(const HitchinPairState& s) {
  const EndForm K = mean_curvature(s);
  return {d_doubleprime(s, K), wedge_bracket(s.phi, K)};
}

HitchinPairState flow_step(const HitchinPairState& s, double dt) {
  const FlowRhs k1 = flow_rhs(s);
  const HitchinPairState s2{s.a + cplx(dt / 2, 0.0) * k1.da,
                            s.phi + cplx(dt / 2, 0.0) * k1.dphi};
  const FlowRhs k2 = flow_rhs(s2);
  const HitchinPairState s3{s.a + cplx(dt / 2, 0.0) * k2.da,
                            s.phi + cplx(dt / 2, 0.0) * k2.dphi};
  const FlowRhs k3 = flow_rhs(s3);
  const HitchinPairState s4{s.a + cplx(dt, 0.0) * k3.da,
                            s.phi + cplx(dt, 0.0) * k3.dphi};
  const FlowRhs k4 = flow_rhs(s4);
  const cplx w(dt / 6.0, 0.0);
  return {s.a + w * (k1.da + cplx(2, 0) * k2.da + cplx(2, 0) * k3.da + k4.da),
          s.phi + w * (k1.dphi + cplx(2, 0) * k2.dphi + cplx(2, 0) * k3.dphi +
                       k4.dphi)};
}

namespace {

FlowSample sample_state(const HitchinPairState& s, double t, double dt, double ymh) {
  FlowSample out;
  out.t = t;
  out.ymh = ymh;
  out.dt = dt;
  out.holomorphy = norm(d_doubleprime(s, s.phi));
  out.integrability = s.grid().n == 1 ? 0.0 : norm(wedge(s.phi, s.phi));
  const EndForm K = mean_curvature(s);
  out.k_hermiticity = norm(K - dagger(K));
  return out;
}

}  // namespace

FlowTrajectory run_flow(const HitchinPairState& s, double t_end, DtPolicy policy) {
  if (!(t_end > 0.0)) throw std::invalid_argument("run_flow: t_end must be positive");
  if (!policy.adaptive && !(policy.dt > 0.0))
    throw std::invalid_argument("run_flow: fixed policy needs dt > 0");
  FlowTrajectory traj;
  HitchinPairState cur = s;
  double t = 0.0;
  double ymh_cur = ymh_dispatch(cur);
  traj.samples.push_back(sample_state(cur, 0.0, 0.0, ymh_cur));
  const double h2 = cur.grid().spacing() * cur.grid().spacing();
  while (t < t_end - 1e-14) {
    double dt = policy.adaptive
                    ? 0.2 * h2 / (1.0 + max_site_norm(mean_curvature(cur)))
                    : policy.dt;
    dt = std::min(dt, t_end - t);
    if (!policy.adaptive) {
      HitchinPairState next = flow_step(cur, dt);
      next.a.check_finite();
      next.phi.check_finite();
      traj.step_log.emplace_back(dt, true);
      cur = std::move(next);
      t += dt;
      ymh_cur = ymh_dispatch(cur);
      traj.samples.push_back(sample_state(cur, t, dt, ymh_cur));
      continue;
    }
    bool accepted = false;
    for (int halvings = 0; halvings <= 20; ++halvings) {
      HitchinPairState next = flow_step(cur, dt);
      next.a.check_finite();
      next.phi.check_finite();
      const double ymh_next = ymh_dispatch(next);
      if (ymh_next <= ymh_cur) {
        traj.step_log.emplace_back(dt, true);
        cur = std::move(next);
        t += dt;
        ymh_cur = ymh_next;
        traj.samples.push_back(sample_state(cur, t, dt, ymh_cur));
        accepted = true;
        break;
      }
      traj.step_log.emplace_back(dt, false);
      dt *= 0.5;
    }
    if (!accepted)
      throw std::runtime_error("run_flow: YMH kept increasing after 20 step halvings at t = " +
                               std::to_string(t));
  }
  traj.final_state = std::move(cur);
  return traj;
}

double first_variation(const HitchinPairState& s, const DeformationPair& def) {
  // Exact derivative of the discrete functional along the deformation ray,
  // term by term, so it matches the symmetric difference to rounding.
  const TorusGrid& g = s.grid();
  const EndForm a10 = def.alpha10();
  const EndForm bstar = def.beta_star();
  const EndForm phis = s.phi_star();

  // dTheta = d'alpha01 + d''alpha10 + [beta,phi*] + [phi,beta*]
  EndForm dtheta = d_prime(s, def.alpha01);
  dtheta += d_doubleprime(s, a10);
  dtheta += wedge_bracket(def.beta, phis);
  dtheta += wedge_bracket(s.phi, bstar);

  if (g.n == 1) {
    EndForm dhol = d_doubleprime(s, def.beta);  // d(d''phi)
    dhol += one_form_bracket(def.alpha01, s.phi);
    return 2.0 * inner_product(dtheta, theta(s)).real() +
           8.0 * inner_product(dhol, d_doubleprime(s, s.phi)).real();
  }

  // the full integrand: |p11|^2 + |p20|^2 + |p02|^2 with
  // p11 = Theta + d''phi + d'phi*, p20 = F20 + d'phi, p02 = F02 + d''phi*
  const ChernCurvature F = chern_curvature(s);
  EndForm p11 = F.f11;
  p11 += wedge_bracket(s.phi, phis);
  p11 += d_doubleprime(s, s.phi);
  p11 += d_prime(s, phis);
  EndForm dp11 = dtheta;
  dp11 += d_doubleprime(s, def.beta);
  dp11 += one_form_bracket(def.alpha01, s.phi);
  dp11 += d_prime(s, bstar);
  dp11 += one_form_bracket(a10, phis);

  EndForm p20 = F.f20;
  p20 += d_prime(s, s.phi);
  EndForm dp20 = d_prime(s, a10);  // dF20
  dp20 += d_prime(s, def.beta);
  dp20 += one_form_bracket(a10, s.phi);

  EndForm p02 = F.f02;
  p02 += d_doubleprime(s, phis);
  EndForm dp02 = d_doubleprime(s, def.alpha01);  // dF02
  dp02 += d_doubleprime(s, bstar);
  dp02 += one_form_bracket(def.alpha01, phis);

  return 2.0 * (inner_product(dp11, p11) + inner_product(dp20, p20) +
                inner_product(dp02, p02))
                   .real();
}

double directional_derivative_fd(const HitchinPairState& s,
                                 const DeformationPair& def, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("directional_derivative_fd: dt > 0");
  const double plus = ymh_dispatch(perturbed(s, def, dt));
  const double minus = ymh_dispatch(perturbed(s, def, -dt));
  return (plus - minus) / (2.0 * dt);
}

}  // namespace ymh
