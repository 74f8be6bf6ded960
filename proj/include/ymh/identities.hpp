#pragma once

#include <functional>
#include <string>

#include "ymh/curvature.hpp"

namespace ymh {

// Residuals of the operator identities used in the proofs.  Adjoints are the
// exact discrete adjoints, so identities built from them alone are machine
// exact; anything invoking the Leibniz rule degrades to O(spacing^2) and is
// measured through refinement sweeps.

/// max residual of i[Lambda,D'] = -(D'')* and i[Lambda,D''] = (D')* on a
/// graded test form of degree 1 or 2.
double kahler_residual(const HitchinPairState& s, const GradedForm& test);

/// (Delta_{d'} - Delta_{d''})f = i[Lambda F, f] on a 0-form.
double laplacian_gap_chern_residual(const HitchinPairState& s, const EndForm& f);
/// (Delta_{D'} - Delta_{D''})f = i Lambda [R, f] on a 0-form.
double laplacian_gap_hs_residual(const HitchinPairState& s, const EndForm& f);

/// ||(D'' - D')(Theta + d'phi + d''phi*)||; identically zero on a surface
/// (degree-3 forms vanish).  For n = 2 the identity only holds on pairs whose
/// holomorphy and integrability residuals vanish (it is proved from phi ^ phi
/// = 0 and d''phi = 0); on those the residual is order-2 in spacing, and on
/// arbitrary pairs it saturates at an O(1) value.  preset_holomorphic supplies
/// spatially varying input with the constraints machine-exact on the lattice.
double bianchi_residual(const HitchinPairState& s);

struct StrongEquivalence {
  double route_reduced = 0.0;  // ||i(d'-d'')(LT) - i[phi,LT] + i[phi*,LT]||
  double route_adjoint = 0.0;  // ||D* R|| via exact discrete adjoints
  double gap = 0.0;  // difference of the two 1-forms; machine-exact zero,
                     // the discrete adjoints reproduce the reduced route
};
StrongEquivalence strong_equivalence(const HitchinPairState& s);

/// |YMH - (||F||^2 + ||[phi,phi*]||^2 + 2||nabla phi||^2)| on a surface with
/// flat base; the two curvature pairings cancel exactly, see the .cpp.
double functional_decomposition_residual(const HitchinPairState& s);

/// ||conformal K - K - (1/2)(compact Laplacian u) Id||.
double conformal_shift_residual(const HitchinPairState& s,
                                const std::vector<double>& u);

struct IdentityReport {
  std::string name;
  std::vector<int> resolutions;
  std::vector<double> residuals;
  std::vector<double> rates;  // fitted order between successive resolutions
  std::string exactness_class;  // "machine-exact" | "order-2" | "diverging"
};

/// Runs residual_fn at each resolution and fits convergence orders.
/// `scale` feeds the machine-exactness threshold 1e-11 * scale.
IdentityReport sweep_identity(const std::string& name,
                              const std::vector<int>& resolutions,
                              const std::function<double(int)>& residual_fn,
                              double scale = 1.0);

}  // namespace ymh
