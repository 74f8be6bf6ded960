#include "ymh/curvature.hpp"

#include <cmath>

#include "ymh/parallel.hpp"

namespace ymh {

namespace {

std::uint8_t bit(int a) { return static_cast<std::uint8_t>(1u << a); }

EndForm identity_form(const TorusGrid& g, int rank) {
  EndForm id(g, rank, 0, 0);
  for_sites(g.sites(), [&](std::size_t s) {
    cplx* m = id.at(0, s);
    for (int i = 0; i < rank; ++i) m[i * rank + i] = cplx(1.0, 0.0);
  });
  return id;
}

}  // namespace

ChernCurvature chern_curvature(const HitchinPairState& s) {
  const TorusGrid& g = s.grid();
  const int r = s.rank();
  const EndForm a10 = s.a10();

  EndForm f11(g, r, 1, 1);
  for (int al = 0; al < g.n; ++al) {
    const int ca10 = a10.component_index(bit(al), 0);
    const EndForm da = del(s.a, al);
    for (int be = 0; be < g.n; ++be) {
      const int ca = s.a.component_index(0, bit(be));
      const EndForm dA = delbar(a10, be);
      const int oc = f11.component_index(bit(al), bit(be));
      const std::size_t blk = f11.block();
      for_sites(g.sites(), [&](std::size_t site) {
        cplx* o = f11.at(oc, site);
        const cplx* d1 = da.at(ca, site);
        const cplx* d2 = dA.at(ca10, site);
        for (std::size_t e = 0; e < blk; ++e) o[e] = d1[e] - d2[e];
        mat_comm_acc(r, cplx(1.0, 0.0), a10.at(ca10, site), s.a.at(ca, site), o);
      });
    }
  }

  if (g.n == 1) {
    // no (2,0)/(0,2) forms on a surface; report zero 0-forms
    return {std::move(f11), EndForm(g, r, 0, 0), EndForm(g, r, 0, 0)};
  }

  EndForm f02(g, r, 0, 2);
  for (int al = 0; al < g.n; ++al)
    for (int be = al + 1; be < g.n; ++be) {
      const int cb = s.a.component_index(0, bit(be));
      const int ca = s.a.component_index(0, bit(al));
      const EndForm d1 = delbar(s.a, al);
      const EndForm d2 = delbar(s.a, be);
      const int oc = f02.component_index(0, static_cast<std::uint8_t>(bit(al) | bit(be)));
      const std::size_t blk = f02.block();
      for_sites(g.sites(), [&](std::size_t site) {
        cplx* o = f02.at(oc, site);
        const cplx* x = d1.at(cb, site);
        const cplx* y = d2.at(ca, site);
        for (std::size_t e = 0; e < blk; ++e) o[e] = x[e] - y[e];
        mat_comm_acc(r, cplx(1.0, 0.0), s.a.at(ca, site), s.a.at(cb, site), o);
      });
    }
  EndForm f20 = cplx(-1.0, 0.0) * dagger(f02);
  return {std::move(f11), std::move(f20), std::move(f02)};
}

EndForm theta(const HitchinPairState& s) {
  EndForm th = chern_curvature(s).f11;
  th += wedge_bracket(s.phi, s.phi_star());
  return th;
}

EndForm mean_curvature(const HitchinPairState& s) {
  return cplx(0.0, 1.0) * lambda_contract(theta(s));
}

HSCurvature hitchin_simpson_curvature(const HitchinPairState& s) {
  const TorusGrid& g = s.grid();
  EndForm th = theta(s);
  if (g.n == 1)
    return {std::move(th), EndForm(g, s.rank(), 0, 0), EndForm(g, s.rank(), 0, 0)};
  return {std::move(th), d_prime(s, s.phi), d_doubleprime(s, s.phi_star())};
}

PairReport classify(const HitchinPairState& s, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("classify: tolerance must be positive");
  const TorusGrid& g = s.grid();
  const int r = s.rank();
  PairReport rep;
  rep.tolerance = tolerance;

  const ChernCurvature F = chern_curvature(s);
  EndForm th = F.f11;
  th += wedge_bracket(s.phi, s.phi_star());
  const EndForm lt = lambda_contract(th);
  const EndForm K = cplx(0.0, 1.0) * lt;
  const EndForm phis = s.phi_star();

  rep.holomorphy = norm(d_doubleprime(s, s.phi));
  rep.integrability = g.n == 1 ? 0.0 : norm(wedge(s.phi, s.phi));
  rep.curvature02 = g.n == 1 ? 0.0 : norm(F.f02);
  rep.k_hermiticity = norm(K - dagger(K));

  const EndForm dplt = d_prime(s, lt);
  const EndForm dpplt = d_doubleprime(s, lt);
  rep.ymh_pair_residual = norm(dplt - wedge_bracket(s.phi, lt));
  rep.strong_dprime = norm(dplt);
  rep.strong_dpprime = norm(dpplt);
  rep.strong_br_phi = norm(wedge_bracket(lt, s.phi));
  rep.strong_br_phistar = norm(wedge_bracket(lt, phis));

  const double vol = std::pow(g.side_length, 2 * g.n);
  rep.lambda_avg = integrate_trace(K).real() / (r * vol);
  rep.lambda_bundle = 0.0;
  rep.hermitian_residual =
      norm(K - cplx(rep.lambda_avg, 0.0) * identity_form(g, r));

  double dmin = 0.0, dmax = 0.0;
  bool first = true;
  for (std::size_t site = 0; site < g.sites(); ++site) {
    const double d = std::abs(mat_det(r, lt.at(0, site)));
    if (first) {
      dmin = dmax = d;
      first = false;
    } else {
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
  }
  rep.det_min_abs = dmin;
  rep.det_max_abs = dmax;

  const double field_scale = max_site_norm(s.phi) + max_site_norm(s.a);
  const double lt_scale = max_site_norm(lt);
  const double tol_f = tolerance * (1.0 + field_scale);
  const double tol_k = tolerance * (1.0 + lt_scale);

  rep.hitchin = rep.holomorphy <= tol_f && rep.integrability <= tol_f &&
                rep.curvature02 <= tol_f;
  rep.ymh_pair = rep.ymh_pair_residual <= tol_k;
  rep.hermitian = rep.hermitian_residual <= tol_k;
  rep.strong = (rep.strong_dprime <= tol_k && rep.strong_dpprime <= tol_k &&
                rep.strong_br_phi <= tol_k && rep.strong_br_phistar <= tol_k) ||
               rep.hermitian;  // Hermitian implies strong by definition
  rep.degenerate =
      rep.ymh_pair && rep.det_min_abs <= tolerance * std::pow(1.0 + lt_scale, r);
  return rep;
}

EndForm conformal_mean_curvature(const HitchinPairState& s,
                                 const std::vector<double>& u) {
  const TorusGrid& g = s.grid();
  if (u.size() != g.sites())
    throw std::invalid_argument("conformal_mean_curvature: u has wrong size");
  const int r = s.rank();
  EndForm uf(g, 1, 0, 0);
  for_sites(g.sites(), [&](std::size_t site) { uf.at(0, site)[0] = cplx(u[site], 0.0); });

  // The rescaled Chern connection shifts A^{1,0} by a central term, so the
  // only change in Theta is + (delbar_b del_a u) Id on each dz^a ^ dzbar^b.
  EndForm th = theta(s);
  for (int al = 0; al < g.n; ++al) {
    const EndForm du = del(uf, al);
    for (int be = 0; be < g.n; ++be) {
      const EndForm dd = delbar(du, be);
      const int oc = th.component_index(bit(al), bit(be));
      for_sites(g.sites(), [&](std::size_t site) {
        const cplx v = dd.at(0, site)[0];
        cplx* m = th.at(oc, site);
        for (int i = 0; i < r; ++i) m[i * r + i] += v;
      });
    }
  }
  return cplx(0.0, 1.0) * lambda_contract(th);
}

}  // namespace ymh
