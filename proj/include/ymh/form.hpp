#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ymh/grid.hpp"
#include "ymh/matrix.hpp"

namespace ymh {

/// One (p,q)-component: bitmasks over the n complex axes of the holomorphic
/// and anti-holomorphic legs, both strictly increasing.
struct FormComponent {
  std::uint8_t holo = 0;
  std::uint8_t anti = 0;
  bool operator==(const FormComponent&) const = default;
};

/// Lexicographic component list for bidegree (p,q) on n axes.
std::vector<FormComponent> enumerate_components(int n, int p, int q);

/// Sign relating (legs of a) ^ (legs of b) to the canonical ordering of their
/// union; 0 if a leg repeats.  `merged` receives the union component.
int merge_sign(int n, FormComponent a, FormComponent b, FormComponent& merged);

/// End(E)-valued (p,q)-form on the lattice: per component, per site, an
/// r x r complex matrix.  Data layout is [component][site][row][col].
class EndForm {
 public:
  EndForm() = default;
  EndForm(const TorusGrid& grid, int rank, int p, int q);

  const TorusGrid& grid() const { return grid_; }
  int rank() const { return rank_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int degree() const { return p_ + q_; }
  int num_components() const { return static_cast<int>(comps_.size()); }
  const std::vector<FormComponent>& components() const { return comps_; }
  int component_index(std::uint8_t holo, std::uint8_t anti) const;

  std::size_t block() const { return static_cast<std::size_t>(rank_) * rank_; }
  cplx* at(int comp, std::size_t site) {
    return data_.data() + (comp * grid_.sites() + site) * block();
  }
  const cplx* at(int comp, std::size_t site) const {
    return data_.data() + (comp * grid_.sites() + site) * block();
  }
  std::vector<cplx>& raw() { return data_; }
  const std::vector<cplx>& raw() const { return data_; }

  bool same_shape(const EndForm& o) const;
  void check_finite() const;

  EndForm& operator+=(const EndForm& o);
  EndForm& operator-=(const EndForm& o);
  EndForm& operator*=(cplx s);
  friend EndForm operator+(EndForm a, const EndForm& b) { return a += b; }
  friend EndForm operator-(EndForm a, const EndForm& b) { return a -= b; }
  friend EndForm operator*(cplx s, EndForm a) { return a *= s; }

 private:
  TorusGrid grid_;
  int rank_ = 1;
  int p_ = 0;
  int q_ = 0;
  std::vector<FormComponent> comps_;
  std::vector<cplx> data_;
};

// ---- grid-level operators -------------------------------------------------

/// Entrywise periodic central difference along a real axis.
EndForm central_diff(const EndForm& f, int axis);
/// del = (D_x - i D_y)/2 and delbar = (D_x + i D_y)/2 on complex axis `ca`,
/// acting on coefficients (no form-index bookkeeping).
EndForm del(const EndForm& f, int ca);
EndForm delbar(const EndForm& f, int ca);

/// Contraction with the Kaehler form: Lambda(dz_a ^ dzbar_a) = -2i, extended
/// to any bidegree with at least one dz and one dzbar leg.
EndForm lambda_contract(const EndForm& psi);

/// <psi,xi> = sum_sites vol * 2^(p+q) * sum_comps tr(psi xi^dagger);
/// conjugate-linear in the second argument.
cplx inner_product(const EndForm& psi, const EndForm& xi);
double norm_sq(const EndForm& psi);
double norm(const EndForm& psi);

/// Integral over the torus of tr(psi) for a 0-form.
cplx integrate_trace(const EndForm& psi);
/// Max over sites of the Frobenius norm of the matrix (0-forms and 1-component
/// forms mostly; takes the max over components).
double max_site_norm(const EndForm& psi);

// ---- pointwise algebra ----------------------------------------------------

/// Hermitian adjoint of the form: (p,q) -> (q,p), conjugate-transpose
/// coefficients, with the (-1)^(pq) sign from conjugating the form basis
/// (so dagger(Theta) = -Theta for the anti-Hermitian curvature part).
EndForm dagger(const EndForm& psi);

/// psi ^ xi with matrix multiplication on coefficients.
EndForm wedge(const EndForm& psi, const EndForm& xi);
/// Graded commutator psi ^ xi - (-1)^(deg deg) xi ^ psi.
EndForm wedge_bracket(const EndForm& psi, const EndForm& xi);

/// Metric contraction pairing one dz of either argument with one dzbar of the
/// other: psi |_ xi = -i Lambda([psi,xi]) with the contraction performed at
/// coefficient level so mixed-degree cases survive on a surface.
EndForm contract(const EndForm& psi, const EndForm& xi);

// ---- deterministic synthesis ---------------------------------------------

/// Band-limited pseudo-random field: every matrix entry is a trigonometric
/// polynomial with modes |k| <= k_max per real axis, coefficients from a
/// counter-based stream keyed by (seed, component, entry).  Bit-reproducible.
EndForm random_bandlimited(const TorusGrid& grid, int rank, int p, int q,
                           std::uint64_t seed, int k_max, double amplitude);

/// Scalar real field from the same stream (rank-1 real trig polynomial).
std::vector<double> random_scalar_bandlimited(const TorusGrid& grid,
                                              std::uint64_t seed, int k_max,
                                              double amplitude);

}  // namespace ymh
