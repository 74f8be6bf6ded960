#pragma once

#include <vector>

#include "ymh/state.hpp"

namespace ymh {

// Covariant first-order operators on End(E)-valued forms, plus their exact
// adjoints with respect to the weighted form inner product.  Adjoints are
// adjoints of the discrete operators themselves, so identities that only use
// adjointness hold to machine precision.

/// d'_A: (p,q) -> (p+1,q); coefficient rule del_a + [A^{1,0}_a, .].
EndForm d_prime(const HitchinPairState& s, const EndForm& f);
/// d''_A: (p,q) -> (p,q+1); coefficient rule delbar_a + [a_abar, .].
EndForm d_doubleprime(const HitchinPairState& s, const EndForm& f);
/// Exact adjoints (lower the corresponding degree).
EndForm d_prime_adj(const HitchinPairState& s, const EndForm& f);
EndForm d_doubleprime_adj(const HitchinPairState& s, const EndForm& f);

/// Graded bracket with a fixed 1-form w (its single bidegree is (1,0) or
/// (0,1)): f -> [w, f], and the exact adjoint of that linear map.
EndForm one_form_bracket(const EndForm& w, const EndForm& f);
EndForm one_form_bracket_adj(const EndForm& w, const EndForm& f, int p_in, int q_in);

/// Covariant central difference along real axis j (form indices untouched):
/// nabla_j = D_j + [A_j, .] with A_{x_a} = A^{1,0}_a + a_abar and
/// A_{y_a} = i(A^{1,0}_a - a_abar).
EndForm nabla_component(const HitchinPairState& s, const EndForm& f, int axis);
/// ||nabla_A f||^2 = sum_j norm_sq(nabla_j f).
double nabla_norm_sq(const HitchinPairState& s, const EndForm& f);

// ---- graded sums of forms of one total degree -----------------------------

/// A form of fixed total degree k stored as its pure-bidegree parts
/// (p+q = k, p,q <= n), in increasing p.  Used by the Hitchin-Simpson
/// operators on mixed-type objects and by the Green solver.
struct GradedForm {
  std::vector<EndForm> parts;

  static GradedForm zero(const TorusGrid& g, int rank, int degree);
  static GradedForm from(EndForm f);
  int degree() const;
  const EndForm* part(int p, int q) const;
  EndForm* part(int p, int q);

  GradedForm& operator+=(const GradedForm& o);
  GradedForm& operator-=(const GradedForm& o);
  GradedForm& operator*=(cplx s);
  friend GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
  friend GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
  friend GradedForm operator*(cplx s, GradedForm a) { return a *= s; }
};

cplx inner_product(const GradedForm& a, const GradedForm& b);
double norm_sq(const GradedForm& a);

/// Lambda on a graded form (degree k -> k-2, k >= 2): contract each part
/// that carries both a dz and a dzbar leg.
GradedForm lambda_contract(const GradedForm& f);

// Hitchin-Simpson operators.  Even on a pure-bidegree input the result mixes
// bidegrees (d''_A raises q, [phi, .] raises p), so these live on GradedForm:
// D'' = d''_A + [phi, .] and D' = d'_A + [phi^*, .], degree k -> k+1, with the
// exact adjoints going k -> k-1.
GradedForm cal_dpp(const HitchinPairState& s, const GradedForm& f);
GradedForm cal_dpp_adj(const HitchinPairState& s, const GradedForm& f);
GradedForm cal_dp(const HitchinPairState& s, const GradedForm& f);
GradedForm cal_dp_adj(const HitchinPairState& s, const GradedForm& f);
/// Hodge-type Laplacian of D'': D'' D''* + D''* D''.
GradedForm dpp_laplacian(const HitchinPairState& s, const GradedForm& f);

/// Wedge product of graded forms (matrix multiplication on coefficients).
GradedForm wedge(const GradedForm& a, const GradedForm& b);

// Actions of a degree-1 graded form Xi = Xi10 + Xi01 on a graded form Omega:
/// Omega o Xi = Omega _| Xi10 + Xi01 _| Omega  (degree k -> k-1).
GradedForm circ_action(const GradedForm& omega, const GradedForm& xi);
/// Omega * Xi = [Omega, Xi10] + [Xi01, Omega]  (degree k -> k+1).
GradedForm star_action(const GradedForm& omega, const GradedForm& xi);

}  // namespace ymh
