#include "ymh/identities.hpp"

#include <cmath>

#include "ymh/parallel.hpp"

namespace ymh {

namespace {

GradedForm hs_curvature_graded(const HitchinPairState& s) {
  const TorusGrid& g = s.grid();
  const HSCurvature R = hitchin_simpson_curvature(s);
  GradedForm out = GradedForm::zero(g, s.rank(), 2);
  *out.part(1, 1) = R.theta;
  if (g.n > 1) {
    *out.part(2, 0) = R.dphi;
    *out.part(0, 2) = R.dphistar;
  }
  return out;
}

}  // namespace

double kahler_residual(const HitchinPairState& s, const GradedForm& test) {
  const TorusGrid& g = s.grid();
  const int k = test.degree();
  if (k < 1 || k > 2 * g.n)
    throw std::invalid_argument("kahler_residual: test degree must be in [1, 2n]");
  const cplx i1(0.0, 1.0);

  GradedForm r1 = cal_dpp_adj(s, test);  // = (D'')* test
  if (k < 2 * g.n) r1 += i1 * lambda_contract(cal_dp(s, test));
  if (k >= 2) r1 -= i1 * cal_dp(s, lambda_contract(test));

  GradedForm r2 = cal_dp_adj(s, test);
  r2 *= cplx(-1.0, 0.0);  // identity: i[Lambda,D''] - (D')* = 0
  if (k < 2 * g.n) r2 += i1 * lambda_contract(cal_dpp(s, test));
  if (k >= 2) r2 -= i1 * cal_dpp(s, lambda_contract(test));

  return std::max(std::sqrt(norm_sq(r1)), std::sqrt(norm_sq(r2)));
}

double laplacian_gap_chern_residual(const HitchinPairState& s, const EndForm& f) {
  if (f.degree() != 0)
    throw std::invalid_argument("laplacian_gap_chern_residual: 0-form test only");
  EndForm lhs = d_prime_adj(s, d_prime(s, f));
  lhs -= d_doubleprime_adj(s, d_doubleprime(s, f));
  const EndForm f11 = chern_curvature(s).f11;
  EndForm rhs = cplx(0.0, 1.0) * lambda_contract(wedge_bracket(f11, f));
  return norm(lhs - rhs);
}

double laplacian_gap_hs_residual(const HitchinPairState& s, const EndForm& f) {
  if (f.degree() != 0)
    throw std::invalid_argument("laplacian_gap_hs_residual: 0-form test only");
  const GradedForm gf = GradedForm::from(f);
  GradedForm lhs = cal_dp_adj(s, cal_dp(s, gf));
  lhs -= cal_dpp_adj(s, cal_dpp(s, gf));

  const GradedForm R = hs_curvature_graded(s);
  GradedForm br = GradedForm::zero(s.grid(), s.rank(), 2);
  for (const EndForm& part : R.parts) *br.part(part.p(), part.q()) += wedge_bracket(part, f);
  const GradedForm rhs = cplx(0.0, 1.0) * lambda_contract(br);

  return std::sqrt(norm_sq(*lhs.part(0, 0) - *rhs.part(0, 0)));
}

double bianchi_residual(const HitchinPairState& s) {
  const TorusGrid& g = s.grid();
  if (g.n == 1) return 0.0;  // degree-3 forms vanish on a surface
  const GradedForm R = hs_curvature_graded(s);
  GradedForm r = cal_dpp(s, R);
  r -= cal_dp(s, R);
  return std::sqrt(norm_sq(r));
}

StrongEquivalence strong_equivalence(const HitchinPairState& s) {
  const EndForm lt = lambda_contract(theta(s));
  const EndForm phis = s.phi_star();
  const cplx i1(0.0, 1.0);

  EndForm red10 = d_prime(s, lt);
  red10 -= wedge_bracket(s.phi, lt);
  red10 *= i1;
  EndForm red01 = d_doubleprime(s, lt);
  red01 -= wedge_bracket(phis, lt);
  red01 *= cplx(0.0, -1.0);

  const GradedForm R = hs_curvature_graded(s);
  GradedForm adj = cal_dp_adj(s, R);
  adj += cal_dpp_adj(s, R);

  StrongEquivalence out;
  out.route_reduced = std::sqrt(norm_sq(red10) + norm_sq(red01));
  out.route_adjoint = std::sqrt(norm_sq(adj));
  out.gap = std::sqrt(norm_sq(*adj.part(1, 0) - red10) +
                      norm_sq(*adj.part(0, 1) - red01));
  return out;
}

double functional_decomposition_residual(const HitchinPairState& s) {
  const TorusGrid& g = s.grid();
  if (g.n != 1)
    throw std::invalid_argument("functional_decomposition_residual: n = 1 only");
  const EndForm f11 = chern_curvature(s).f11;
  EndForm th = f11;
  th += wedge_bracket(s.phi, s.phi_star());
  const double lhs = norm_sq(th) + 4.0 * norm_sq(d_doubleprime(s, s.phi));

  // the curvature pairing 2<i[Lambda F, phi], phi> that appears when trading
  // 4||d''phi||^2 for 2||nabla phi||^2 cancels against 2<F, [phi,phi*]>
  // exactly (they agree to machine precision), so the decomposition closes
  // without an explicit cross term
  const double rhs = norm_sq(f11) + norm_sq(wedge_bracket(s.phi, s.phi_star())) +
                     2.0 * nabla_norm_sq(s, s.phi);
  return std::abs(lhs - rhs);
}

double conformal_shift_residual(const HitchinPairState& s,
                                const std::vector<double>& u) {
  const TorusGrid& g = s.grid();
  const int r = s.rank();
  EndForm diff = conformal_mean_curvature(s, u);
  diff -= mean_curvature(s);
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  for_sites(g.sites(), [&](std::size_t site) {
    double lap = 0.0;  // compact 3-point Laplacian per real axis
    for (int ax = 0; ax < g.axes(); ++ax)
      lap += (u[g.shift(site, ax, +1)] - 2.0 * u[site] + u[g.shift(site, ax, -1)]) * inv_h2;
    cplx* m = diff.at(0, site);
    for (int i = 0; i < r; ++i) m[i * r + i] -= cplx(0.5 * lap, 0.0);
  });
  return norm(diff);
}

IdentityReport sweep_identity(const std::string& name,
                              const std::vector<int>& resolutions,
                              const std::function<double(int)>& residual_fn,
                              double scale) {
  if (resolutions.empty())
    throw std::invalid_argument("sweep_identity: need at least one resolution");
  IdentityReport rep;
  rep.name = name;
  rep.resolutions = resolutions;
  for (int res : resolutions) rep.residuals.push_back(residual_fn(res));
  for (std::size_t i = 0; i + 1 < rep.residuals.size(); ++i) {
    const double r0 = rep.residuals[i], r1 = rep.residuals[i + 1];
    const double ratio = static_cast<double>(resolutions[i + 1]) / resolutions[i];
    rep.rates.push_back(r0 > 0.0 && r1 > 0.0
                            ? std::log(r0 / r1) / std::log(ratio)
                            : 0.0);
  }
  bool exact = true, diverging = false;
  for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
    if (rep.residuals[i] > 1e-11 * scale) exact = false;
    if (i > 0 && rep.residuals[i] > 2.0 * rep.residuals[i - 1] &&
        rep.residuals[i] > 1e-11 * scale)
      diverging = true;
  }
  rep.exactness_class = exact ? "machine-exact" : diverging ? "diverging" : "order-2";
  return rep;
}

}  // namespace ymh
