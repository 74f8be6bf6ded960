#pragma once

#include "ymh/operators.hpp"

namespace ymh {

struct ChernCurvature {
  EndForm f11;  // (1,1)
  EndForm f20;  // (2,0), zero form for n=1
  EndForm f02;  // (0,2), zero form for n=1
};

/// F = dA + A^A for the Chern connection A = -(a)^dagger + a, by bidegree.
ChernCurvature chern_curvature(const HitchinPairState& s);

/// Theta = F^{1,1} + [phi, phi*]; anti-Hermitian (dagger(Theta) = -Theta).
EndForm theta(const HitchinPairState& s);
/// K = i Lambda Theta; Hermitian to machine precision.
EndForm mean_curvature(const HitchinPairState& s);

struct HSCurvature {
  EndForm theta;     // (1,1)
  EndForm dphi;      // (2,0): d'_A phi
  EndForm dphistar;  // (0,2): d''_A phi*
};

/// Curvature of the Hitchin-Simpson connection, R = Theta + d'phi + d''phi*.
HSCurvature hitchin_simpson_curvature(const HitchinPairState& s);

struct PairReport {
  double tolerance = 0.0;

  // Hitchin-pair residuals
  double holomorphy = 0.0;   // ||d''_A phi||
  double integrability = 0.0;  // ||phi ^ phi||
  double curvature02 = 0.0;  // ||F^{0,2}||

  double k_hermiticity = 0.0;  // ||K - K^dagger||

  double ymh_pair_residual = 0.0;  // ||d'(LT) - [phi, LT]||, LT = Lambda Theta

  // the four strong-pair norms
  double strong_dprime = 0.0;    // ||d'(LT)||
  double strong_dpprime = 0.0;   // ||d''(LT)||
  double strong_br_phi = 0.0;    // ||[LT, phi]||
  double strong_br_phistar = 0.0;  // ||[LT, phi*]||

  double lambda_avg = 0.0;       // (1/(r Vol)) Re integral tr(K)
  double lambda_bundle = 0.0;    // trivial bundle: 0
  double hermitian_residual = 0.0;  // ||K - lambda_avg Id||

  double det_min_abs = 0.0;  // over sites, |det(Lambda Theta)|
  double det_max_abs = 0.0;

  bool hitchin = false;
  bool ymh_pair = false;
  bool strong = false;
  bool hermitian = false;
  bool degenerate = false;
};

PairReport classify(const HitchinPairState& s, double tolerance);

/// Mean curvature after the conformal change h -> e^u h of the metric,
/// through the rescaled Chern connection; the shift against K is
/// (1/2)(Laplacian u) Id up to discretization.
EndForm conformal_mean_curvature(const HitchinPairState& s,
                                 const std::vector<double>& u);

}  // namespace ymh
