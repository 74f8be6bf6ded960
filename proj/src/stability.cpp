#include "ymh/stability.hpp"

#include <cmath>

#include "ymh/flow.hpp"
#include "ymh/parallel.hpp"

namespace ymh {

namespace {

GradedForm alpha_graded(const DeformationPair& def) {
  GradedForm a = GradedForm::zero(def.alpha01.grid(), def.alpha01.rank(), 1);
  *a.part(1, 0) = def.alpha10();
  *a.part(0, 1) = def.alpha01;
  return a;
}

GradedForm tilde_graded(const EndForm& f10) {
  GradedForm b = GradedForm::zero(f10.grid(), f10.rank(), 1);
  *b.part(1, 0) = f10;
  *b.part(0, 1) = dagger(f10);
  return b;
}

double ymh_dispatch(const HitchinPairState& s) {
  return s.grid().n == 1 ? ymh_surface(s) : ymh_general(s, Integrand::full);
}

/// d*_{A0} on a graded 1-form: d'* of the (1,0) part plus d''* of the (0,1).
EndForm d_star_one_form(const HitchinPairState& s, const GradedForm& a) {
  EndForm out = d_prime_adj(s, *a.part(1, 0));
  out += d_doubleprime_adj(s, *a.part(0, 1));
  return out;
}

}  // namespace

McResiduals mc_residuals(const HitchinPairState& base, const DeformationPair& def,
                         double t) {
  const TorusGrid& g = base.grid();
  McResiduals out;
  const cplx ct(t, 0.0), ct2(t * t, 0.0);
  if (g.n > 1) {
    EndForm r1 = ct * d_doubleprime(base, def.alpha01);
    r1 += ct2 * wedge(def.alpha01, def.alpha01);
    out.r1 = norm(r1);
    EndForm r3 = ct * wedge_bracket(base.phi, def.beta);
    r3 += ct2 * wedge(def.beta, def.beta);
    out.r3 = norm(r3);
  }
  EndForm r2 = ct * d_doubleprime(base, def.beta);
  r2 += ct * wedge_bracket(def.alpha01, base.phi);
  r2 += ct2 * wedge_bracket(def.alpha01, def.beta);
  out.r2 = norm(r2);
  return out;
}

HolomorphyReport is_holomorphic_deformation(const HitchinPairState& base,
                                            const DeformationPair& def,
                                            double tolerance) {
  const TorusGrid& g = base.grid();
  HolomorphyReport rep;
  rep.dbar_alpha = g.n == 1 ? 0.0 : norm(d_doubleprime(base, def.alpha01));
  rep.dbar_beta = norm(d_doubleprime(base, def.beta));
  GradedForm u = GradedForm::zero(g, base.rank(), 1);
  *u.part(0, 1) = def.alpha01;
  *u.part(1, 0) = def.beta;
  rep.dpp_closed = std::sqrt(norm_sq(cal_dpp(base, u)));
  const double scale =
      1.0 + max_site_norm(def.alpha01) + max_site_norm(def.beta);
  rep.verdict =
      rep.dbar_alpha <= tolerance * scale && rep.dbar_beta <= tolerance * scale;
  return rep;
}

StabilityReport quadratic_form_Q(const HitchinPairState& base,
                                 const DeformationPair& def) {
  StabilityReport rep;
  const EndForm lt = lambda_contract(theta(base));
  const GradedForm a = alpha_graded(def);
  const GradedForm bt = tilde_graded(def.beta);
  const GradedForm pt = tilde_graded(base.phi);

  const GradedForm aa = circ_action(a, a);
  const GradedForm bb = circ_action(bt, bt);
  const cplx br = cplx(0.0, 1.0) *
                  (inner_product(*aa.part(0, 0), lt) + inner_product(*bb.part(0, 0), lt));
  rep.bracket_term = br.real();

  rep.dstar_term = norm_sq(d_star_one_form(base, a));
  rep.higgs_term = norm_sq(circ_action(pt, bt));
  rep.Q_value = rep.bracket_term + rep.dstar_term - rep.higgs_term;

  const TorusGrid& g = base.grid();
  rep.admissibility.r1 = g.n == 1 ? 0.0 : norm(d_doubleprime(base, def.alpha01));
  EndForm r2 = d_doubleprime(base, def.beta);
  r2 += wedge_bracket(def.alpha01, base.phi);
  rep.admissibility.r2 = norm(r2);
  rep.admissibility.r3 =
      g.n == 1 ? 0.0 : norm(wedge_bracket(base.phi, def.beta));
  return rep;
}

double quadratic_form_Q_parallel(const HitchinPairState& base,
                                 const DeformationPair& def, double tolerance) {
  const GradedForm a = alpha_graded(def);
  // parallel means D_{(A0,phi0)} alpha = 0; measure with both pieces
  GradedForm da = cal_dpp(base, a);
  da += cal_dp(base, a);
  const double dn = std::sqrt(norm_sq(da));
  const double scale = 1.0 + std::sqrt(norm_sq(*a.part(0, 1)));
  if (dn > tolerance * scale)
    throw std::invalid_argument("quadratic_form_Q_parallel: alpha is not parallel");

  const EndForm lt = lambda_contract(theta(base));
  const GradedForm bt = tilde_graded(def.beta);
  const GradedForm pt = tilde_graded(base.phi);
  const GradedForm aa = circ_action(a, a);
  const GradedForm bb = circ_action(bt, bt);
  const cplx br = cplx(0.0, 1.0) *
                  (inner_product(*aa.part(0, 0), lt) + inner_product(*bb.part(0, 0), lt));
  double nabla = 0.0;
  for (const EndForm& part : a.parts) nabla += nabla_norm_sq(base, part);
  return br.real() + nabla - norm_sq(circ_action(pt, bt));
}

double second_variation_fd(const HitchinPairState& base,
                           const DeformationPair& def, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("second_variation_fd: dt > 0");
  // 5-point stencil: O(dt^4) truncation, and exact on the quartic rays the
  // constant-coefficient batteries produce
  const double p1 = ymh_dispatch(perturbed(base, def, dt));
  const double m1 = ymh_dispatch(perturbed(base, def, -dt));
  const double p2 = ymh_dispatch(perturbed(base, def, 2.0 * dt));
  const double m2 = ymh_dispatch(perturbed(base, def, -2.0 * dt));
  const double mid = ymh_dispatch(base);
  return (-p2 + 16.0 * p1 - 30.0 * mid + 16.0 * m1 - m2) / (12.0 * dt * dt);
}

StabilityReport stability_classify(const HitchinPairState& base,
                                   const DeformationPair& def, double tolerance,
                                   double fd_dt) {
  StabilityReport rep = quadratic_form_Q(base, def);
  rep.base_strong = classify(base, tolerance).strong;
  rep.second_variation = second_variation_fd(base, def, fd_dt);
  const double def_sq = norm_sq(def.alpha01) + norm_sq(def.beta);
  const double base_sq = norm_sq(base.phi) + norm_sq(base.a);
  const double band = tolerance * (1.0 + def_sq * (1.0 + base_sq));
  if (rep.second_variation > band) {
    rep.verdict = StabilityVerdict::stable;
  } else if (rep.second_variation < -band) {
    rep.verdict = StabilityVerdict::unstable;
  } else if (std::abs(2.0 * rep.Q_value) <= 10.0 * band) {
    rep.verdict = StabilityVerdict::semi_stable;
  } else {
    rep.verdict = StabilityVerdict::indeterminate;
    rep.q_disagreement = true;
  }
  return rep;
}

HermitianCheck hermitian_stability_check(const HitchinPairState& base,
                                         const DeformationPair& def,
                                         double tolerance) {
  if (!classify(base, tolerance).hermitian)
    throw std::invalid_argument("hermitian_stability_check: base is not Hermitian");
  HermitianCheck out;
  out.lhs = norm_sq(d_star_one_form(base, alpha_graded(def)));
  EndForm mix = contract(base.phi, dagger(def.beta));
  mix += contract(def.beta, base.phi_star());
  out.rhs = norm_sq(mix);
  out.holds = out.lhs > out.rhs;
  return out;
}

ContractionReport contraction_deformation(const HitchinPairState& base,
                                          const std::vector<cplx>& v,
                                          const EndForm& Pi) {
  const TorusGrid& g = base.grid();
  if (static_cast<int>(v.size()) != g.n)
    throw std::invalid_argument("contraction_deformation: v needs n components");
  if (Pi.p() != 1 || Pi.q() != 1)
    throw std::invalid_argument("contraction_deformation: Pi must be (1,1)");
  const int r = Pi.rank();

  EndForm alpha01(g, r, 0, 1);
  for (int be = 0; be < g.n; ++be) {
    const int oc = alpha01.component_index(0, static_cast<std::uint8_t>(1u << be));
    for (int al = 0; al < g.n; ++al) {
      const int pc = Pi.component_index(static_cast<std::uint8_t>(1u << al),
                                        static_cast<std::uint8_t>(1u << be));
      const cplx va = v[al];
      for_sites(g.sites(), [&](std::size_t site) {
        const cplx* src = Pi.at(pc, site);
        cplx* dst = alpha01.at(oc, site);
        for (int e = 0; e < r * r; ++e) dst[e] += va * src[e];
      });
    }
  }

  ContractionReport rep;
  rep.def = {alpha01, base.phi};

  double dsq = 0.0;  // the (2,1)/(1,2) pieces exist for n=2 only
  if (Pi.p() + 1 <= g.n) dsq += norm_sq(d_prime(base, Pi));
  if (Pi.q() + 1 <= g.n) dsq += norm_sq(d_doubleprime(base, Pi));
  rep.d_pi = std::sqrt(dsq);
  rep.dstar_pi = std::sqrt(norm_sq(d_prime_adj(base, Pi)) +
                           norm_sq(d_doubleprime_adj(base, Pi)));

  EndForm nv(g, r, 1, 1);
  for (int al = 0; al < g.n; ++al) {
    EndForm nz = nabla_component(base, Pi, 2 * al);
    nz *= cplx(0.5, 0.0);
    EndForm ny = nabla_component(base, Pi, 2 * al + 1);
    ny *= cplx(0.0, -0.5);
    nz += ny;
    nz *= v[al];
    nv += nz;
  }
  rep.nabla_v_pi = norm(nv);
  rep.bracket_phi = norm(wedge_bracket(base.phi, alpha01));
  rep.bracket_self = g.n == 1 ? 0.0 : norm(wedge(alpha01, alpha01));
  return rep;
}

DeformationPair weak_test_deformation(const HitchinPairState& base,
                                      const EndForm& v01, cplx c) {
  const TorusGrid& g = base.grid();
  if (v01.p() != 0 || v01.q() != 1 || v01.rank() != 1)
    throw std::invalid_argument("weak_test_deformation: v01 must be a scalar (0,1)-form");
  const EndForm lt = lambda_contract(theta(base));
  const int r = base.rank();
  EndForm alpha01(g, r, 0, 1);
  for (int cc = 0; cc < alpha01.num_components(); ++cc) {
    for_sites(g.sites(), [&](std::size_t site) {
      const cplx s = v01.at(cc, site)[0];
      const cplx* m = lt.at(0, site);
      cplx* dst = alpha01.at(cc, site);
      for (int e = 0; e < r * r; ++e) dst[e] = s * m[e];
    });
  }
  return {std::move(alpha01), c * base.phi};
}

GreenResult green_apply(const HitchinPairState& base, const GradedForm& y) {
  GreenResult res;
  res.x = GradedForm::zero(base.grid(), base.rank(), y.degree());
  const GradedForm b = dpp_laplacian(base, y);
  const double bnorm2 = norm_sq(b);
  if (bnorm2 == 0.0) {
    res.harmonic = y;
    res.converged = true;
    return res;
  }
  // CG on the normal equations L^2 x = L y keeps the iterates orthogonal to
  // ker L, so the limit is the minimum-norm least-squares solution.
  GradedForm r = b;
  GradedForm p = r;
  double rho = bnorm2;
  const int max_iter = static_cast<int>(10 * base.grid().sites());
  const double tol2 = 1e-16 * bnorm2;  // (1e-8 relative)^2
  int it = 0;
  while (it < max_iter && rho > tol2) {
    const GradedForm ap = dpp_laplacian(base, dpp_laplacian(base, p));
    const double denom = inner_product(p, ap).real();
    if (!(denom > 0.0)) break;
    const double alpha = rho / denom;
    res.x += cplx(alpha, 0.0) * p;
    r -= cplx(alpha, 0.0) * ap;
    const double rho_new = norm_sq(r);
    p *= cplx(rho_new / rho, 0.0);
    p += r;
    rho = rho_new;
    ++it;
  }
  res.iterations = it;
  res.rel_residual = std::sqrt(rho / bnorm2);
  res.converged = rho <= tol2;
  res.harmonic = y - dpp_laplacian(base, res.x);
  return res;
}

DeformationSeries solve_deformation_series(const HitchinPairState& base,
                                           const DeformationPair& def0,
                                           int order) {
  if (order < 0) throw std::invalid_argument("solve_deformation_series: order >= 0");
  const TorusGrid& g = base.grid();
  DeformationSeries out;
  out.base = base;
  // coefficient of t^0 is identically zero; the seed sits at order 1
  out.alpha.push_back(EndForm(g, base.rank(), 0, 1));
  out.beta.push_back(EndForm(g, base.rank(), 1, 0));
  std::vector<GradedForm> u;
  u.push_back(GradedForm::zero(g, base.rank(), 1));
  if (order >= 1) {
    out.alpha.push_back(def0.alpha01);
    out.beta.push_back(def0.beta);
    GradedForm u1 = GradedForm::zero(g, base.rank(), 1);
    *u1.part(0, 1) = def0.alpha01;
    *u1.part(1, 0) = def0.beta;
    u.push_back(std::move(u1));
  }

  for (int k = 2; k <= order; ++k) {
    GradedForm source = GradedForm::zero(g, base.rank(), 2);
    for (int i = 1; i < k; ++i) source += wedge(u[i], u[k - i]);
    const GreenResult green = green_apply(base, source);
    const double hnorm = std::sqrt(norm_sq(green.harmonic));
    out.max_harmonic_norm = std::max(out.max_harmonic_norm, hnorm);
    if (hnorm > 1e-8 * (1.0 + std::sqrt(norm_sq(source)))) out.obstructed = true;
    GradedForm uk = cal_dpp_adj(base, green.x);
    uk *= cplx(-1.0, 0.0);
    out.alpha.push_back(*uk.part(0, 1));
    out.beta.push_back(*uk.part(1, 0));
    u.push_back(std::move(uk));
  }
  return out;
}

DeformationPair evaluate_series(const DeformationSeries& series, double t) {
  EndForm a = series.alpha.front();
  EndForm b = series.beta.front();
  double tk = 1.0;
  for (std::size_t k = 1; k < series.alpha.size(); ++k) {
    tk *= t;
    a += cplx(tk, 0.0) * series.alpha[k];
    b += cplx(tk, 0.0) * series.beta[k];
  }
  return {std::move(a), std::move(b)};
}

}  // namespace ymh
