#pragma once

#include "ymh/curvature.hpp"

namespace ymh {

struct McResiduals {
  double r1 = 0.0;  // ||t d''a + t^2 a^a||           ((0,2); zero for n=1)
  double r2 = 0.0;  // ||t d''b + t [a,phi] + t^2 [a,b]||
  double r3 = 0.0;  // ||t [phi,b] + t^2 b^b||        ((2,0); zero for n=1)
};
McResiduals mc_residuals(const HitchinPairState& base, const DeformationPair& def,
                         double t);

struct HolomorphyReport {
  double dbar_alpha = 0.0;  // ||d''_A0 alpha01||
  double dbar_beta = 0.0;   // ||d''_A0 beta||
  double dpp_closed = 0.0;  // ||D''(alpha01 + beta)||
  bool verdict = false;
};
HolomorphyReport is_holomorphic_deformation(const HitchinPairState& base,
                                            const DeformationPair& def,
                                            double tolerance);

enum class StabilityVerdict { stable, semi_stable, unstable, indeterminate };

struct StabilityReport {
  double Q_value = 0.0;
  double bracket_term = 0.0;  // i <a o a + bt o bt, Lambda Theta>
  double dstar_term = 0.0;    // ||d*_{A0} alpha||^2
  double higgs_term = 0.0;    // ||phit_0 o bt||^2
  McResiduals admissibility;  // Eq-system residuals at first order (t = 1,
                              // quadratic terms dropped)
  double second_variation = 0.0;
  StabilityVerdict verdict = StabilityVerdict::indeterminate;
  bool q_disagreement = false;
  bool base_strong = true;
};

/// The quadratic form Q = i<a o a + bt o bt, LT> + ||d* a||^2 - ||phit o bt||^2
/// with a = alpha01 - (alpha01)^dagger, bt = beta + beta^dagger.  Fills the
/// term breakdown and first-order admissibility residuals; no verdict.
StabilityReport quadratic_form_Q(const HitchinPairState& base,
                                 const DeformationPair& def);

/// Variant for parallel alpha (flat base, Ricci term zero):
/// replaces ||d* a||^2 by ||nabla_{A0} a||^2.  Throws when ||D a|| exceeds
/// tolerance times scale.
double quadratic_form_Q_parallel(const HitchinPairState& base,
                                 const DeformationPair& def, double tolerance);

/// (YMH(+dt) - 2 YMH(0) + YMH(-dt)) / dt^2 along the deformation ray.
double second_variation_fd(const HitchinPairState& base,
                           const DeformationPair& def, double dt);

StabilityReport stability_classify(const HitchinPairState& base,
                                   const DeformationPair& def, double tolerance,
                                   double fd_dt = 1e-3);

struct HermitianCheck {
  double lhs = 0.0;  // ||d* a||^2
  double rhs = 0.0;  // ||phi0 _| b* + b _| phi0*||^2
  bool holds = false;
};
/// Corollary-style criterion on Hermitian bases; throws when the base fails
/// the Hermitian verdict at the given tolerance.
HermitianCheck hermitian_stability_check(const HitchinPairState& base,
                                         const DeformationPair& def,
                                         double tolerance);

struct ContractionReport {
  DeformationPair def;
  double d_pi = 0.0;         // ||d_{A0} Pi||
  double dstar_pi = 0.0;     // ||d*_{A0} Pi||
  double nabla_v_pi = 0.0;   // ||(nabla_{A0})_v Pi||
  double bracket_phi = 0.0;  // ||[phi0, v _| Pi]||
  double bracket_self = 0.0;  // ||[v _| Pi, v _| Pi]||
};
/// alpha01 = v _| Pi (interior product with the dz legs), beta = phi0, with
/// the side-condition residuals attached (reported, not enforced).
ContractionReport contraction_deformation(const HitchinPairState& base,
                                          const std::vector<cplx>& v,
                                          const EndForm& Pi);

/// alpha01 = v01 * (Lambda Theta), beta = c phi0; v01 is a rank-1 scalar
/// (0,1)-form whose delbar-closedness is the caller's responsibility.
DeformationPair weak_test_deformation(const HitchinPairState& base,
                                      const EndForm& v01, cplx c);

struct GreenResult {
  GradedForm x;         // minimum-norm solution of Laplacian x = y - harmonic
  GradedForm harmonic;  // y - Laplacian x
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};
/// Pseudo-inverse of the D''-Laplacian via conjugate gradients on the normal
/// equations (relative residual <= 1e-8 or 10 * sites iterations).
GreenResult green_apply(const HitchinPairState& base, const GradedForm& y);

struct DeformationSeries {
  HitchinPairState base;
  std::vector<EndForm> alpha;  // (0,1) coefficients, order 0..K
  std::vector<EndForm> beta;   // (1,0) coefficients, order 0..K
  bool obstructed = false;
  double max_harmonic_norm = 0.0;  // largest harmonic part of any source
};
DeformationSeries solve_deformation_series(const HitchinPairState& base,
                                           const DeformationPair& def0,
                                           int order);
/// Truncated series evaluated at parameter t.
DeformationPair evaluate_series(const DeformationSeries& series, double t);

}  // namespace ymh
