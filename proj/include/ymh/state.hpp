#pragma once

#include "ymh/form.hpp"

namespace ymh {

/// The state (A, phi) on the trivial rank-r bundle with the standard metric.
/// Only the (0,1) connection coefficients are stored; the (1,0) part is the
/// derived Chern-connection value -a^dagger and can never drift from it.
struct HitchinPairState {
  EndForm a;    // (0,1): A^{0,1} = sum a_abar dzbar^a
  EndForm phi;  // (1,0): Higgs field

  HitchinPairState() = default;
  HitchinPairState(EndForm a_, EndForm phi_);

  const TorusGrid& grid() const { return a.grid(); }
  int rank() const { return a.rank(); }

  /// A^{1,0} = -(a)^dagger.
  EndForm a10() const { return cplx(-1.0, 0.0) * dagger(a); }
  /// phi^* with respect to the standard metric.
  EndForm phi_star() const { return dagger(phi); }
};

/// Deformation direction (alpha^{0,1}, beta); derived combinations used in
/// the variation formulas are computed on demand.
struct DeformationPair {
  EndForm alpha01;  // (0,1)
  EndForm beta;     // (1,0)

  /// alpha^{1,0} = -(alpha^{0,1})^dagger, so the perturbed state keeps the
  /// Chern constraint.
  EndForm alpha10() const { return cplx(-1.0, 0.0) * dagger(alpha01); }
  EndForm beta_star() const { return dagger(beta); }

  DeformationPair scaled(double s) const {
    return {cplx(s, 0.0) * alpha01, cplx(s, 0.0) * beta};
  }
};

/// State moved by t along a deformation direction.
HitchinPairState perturbed(const HitchinPairState& base,
                           const DeformationPair& def, double t);

}  // namespace ymh
