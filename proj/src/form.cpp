#include "ymh/form.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ymh/parallel.hpp"

namespace ymh {

namespace {

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

/// Axes set in a mask, ascending.
void mask_axes(std::uint8_t mask, int n, int* out, int& count) {
  count = 0;
  for (int a = 0; a < n; ++a)
    if (mask & (1u << a)) out[count++] = a;
}

/// Sign that sorts a sequence of wedge factor keys; 0 if a key repeats.
/// Keys: dz_a -> a, dzbar_b -> n + b, and the canonical order is ascending.
int sort_sign(int* keys, int count) {
  int sign = 1;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      if (keys[i] == keys[j]) return 0;
      if (keys[i] > keys[j]) sign = -sign;
    }
  return sign;
}

struct Merge {
  FormComponent comp;
  int sign = 0;  // 0: the wedge vanishes
};

/// Sign and component of (dz^I1 ^ dzbar^J1) ^ (dz^I2 ^ dzbar^J2) relative to
/// the canonical dz^I ^ dzbar^J ordering.
Merge merge_components(int n, FormComponent a, FormComponent b) {
  if ((a.holo & b.holo) || (a.anti & b.anti)) return {};
  int keys[8];
  int count = 0;
  int axes[4], na = 0;
  mask_axes(a.holo, n, axes, na);
  for (int i = 0; i < na; ++i) keys[count++] = axes[i];
  mask_axes(a.anti, n, axes, na);
  for (int i = 0; i < na; ++i) keys[count++] = n + axes[i];
  mask_axes(b.holo, n, axes, na);
  for (int i = 0; i < na; ++i) keys[count++] = axes[i];
  mask_axes(b.anti, n, axes, na);
  for (int i = 0; i < na; ++i) keys[count++] = n + axes[i];
  Merge m;
  m.sign = sort_sign(keys, count);
  m.comp = FormComponent{static_cast<std::uint8_t>(a.holo | b.holo),
                         static_cast<std::uint8_t>(a.anti | b.anti)};
  return m;
}

/// Position of axis `g` inside the ordered leg list of component c
/// (holomorphic legs first), for the holomorphic (kind 0) or
/// anti-holomorphic (kind 1) leg dz_g / dzbar_g.
int leg_position(int, FormComponent c, int g, int kind) {
  int pos = 0;
  if (kind == 0) {
    for (int a = 0; a < g; ++a)
      if (c.holo & (1u << a)) ++pos;
  } else {
    pos = std::popcount(c.holo);
    for (int a = 0; a < g; ++a)
      if (c.anti & (1u << a)) ++pos;
  }
  return pos;
}

int leg_count(FormComponent c) { return std::popcount(c.holo) + std::popcount(c.anti); }

double site_sum(std::vector<double>& partial) {
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

}  // namespace

int merge_sign(int n, FormComponent a, FormComponent b, FormComponent& merged) {
  const Merge m = merge_components(n, a, b);
  merged = m.comp;
  return m.sign;
}

std::vector<FormComponent> enumerate_components(int n, int p, int q) {
  std::vector<std::uint8_t> holo, anti;
  for (std::uint8_t m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) == p) holo.push_back(m);
    if (std::popcount(m) == q) anti.push_back(m);
  }
  std::vector<FormComponent> out;
  out.reserve(holo.size() * anti.size());
  for (auto h : holo)
    for (auto a : anti) out.push_back({h, a});
  return out;
}

EndForm::EndForm(const TorusGrid& grid, int rank, int p, int q)
    : grid_(grid), rank_(rank), p_(p), q_(q) {
  if (rank < 1) throw std::invalid_argument("EndForm: rank must be >= 1");
  if (p < 0 || q < 0 || p > grid.n || q > grid.n)
    throw std::invalid_argument("EndForm: bidegree out of range");
  comps_ = enumerate_components(grid.n, p, q);
  if (static_cast<int>(comps_.size()) != binom(grid.n, p) * binom(grid.n, q))
    throw std::logic_error("EndForm: component count mismatch");
  data_.assign(comps_.size() * grid.sites() * block(), cplx(0.0, 0.0));
}

int EndForm::component_index(std::uint8_t holo, std::uint8_t anti) const {
  for (int i = 0; i < num_components(); ++i)
    if (comps_[i].holo == holo && comps_[i].anti == anti) return i;
  return -1;
}

bool EndForm::same_shape(const EndForm& o) const {
  return grid_ == o.grid_ && rank_ == o.rank_ && p_ == o.p_ && q_ == o.q_;
}

void EndForm::check_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::runtime_error("EndForm: non-finite entry");
}

EndForm& EndForm::operator+=(const EndForm& o) {
  if (!same_shape(o)) throw std::invalid_argument("EndForm +=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

EndForm& EndForm::operator-=(const EndForm& o) {
  if (!same_shape(o)) throw std::invalid_argument("EndForm -=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

EndForm& EndForm::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

// ---- differences ----------------------------------------------------------

EndForm central_diff(const EndForm& f, int axis) {
  const TorusGrid& g = f.grid();
  if (axis < 0 || axis >= g.axes())
    throw std::out_of_range("central_diff: axis out of range");
  EndForm out(g, f.rank(), f.p(), f.q());
  const double inv2h = 1.0 / (2.0 * g.spacing());
  const std::size_t blk = f.block();
  for (int c = 0; c < f.num_components(); ++c) {
    for_sites(g.sites(), [&](std::size_t s) {
      const cplx* fp = f.at(c, g.shift(s, axis, +1));
      const cplx* fm = f.at(c, g.shift(s, axis, -1));
      cplx* o = out.at(c, s);
      for (std::size_t e = 0; e < blk; ++e) o[e] = (fp[e] - fm[e]) * inv2h;
    });
  }
  return out;
}

EndForm del(const EndForm& f, int ca) {
  if (ca < 0 || ca >= f.grid().n) throw std::out_of_range("del: complex axis");
  EndForm dx = central_diff(f, 2 * ca);
  EndForm dy = central_diff(f, 2 * ca + 1);
  dx *= cplx(0.5, 0.0);
  dy *= cplx(0.0, -0.5);
  dx += dy;
  return dx;
}

EndForm delbar(const EndForm& f, int ca) {
  if (ca < 0 || ca >= f.grid().n) throw std::out_of_range("delbar: complex axis");
  EndForm dx = central_diff(f, 2 * ca);
  EndForm dy = central_diff(f, 2 * ca + 1);
  dx *= cplx(0.5, 0.0);
  dy *= cplx(0.0, 0.5);
  dx += dy;
  return dx;
}

// ---- Lambda ---------------------------------------------------------------

EndForm lambda_contract(const EndForm& psi) {
  const TorusGrid& g = psi.grid();
  if (psi.p() < 1 || psi.q() < 1)
    throw std::invalid_argument("lambda_contract: needs at least one dz and one dzbar leg");
  EndForm out(g, psi.rank(), psi.p() - 1, psi.q() - 1);
  const std::size_t blk = psi.block();
  for (int c = 0; c < psi.num_components(); ++c) {
    const FormComponent comp = psi.components()[c];
    for (int gax = 0; gax < g.n; ++gax) {
      if (!(comp.holo & (1u << gax)) || !(comp.anti & (1u << gax))) continue;
      const FormComponent rest{static_cast<std::uint8_t>(comp.holo & ~(1u << gax)),
                               static_cast<std::uint8_t>(comp.anti & ~(1u << gax))};
      // dz_g ^ dzbar_g ^ rest = s * (canonical component)
      const Merge m = merge_components(
          g.n, FormComponent{static_cast<std::uint8_t>(1u << gax),
                             static_cast<std::uint8_t>(1u << gax)},
          rest);
      if (m.sign == 0) continue;
      const int oc = out.component_index(rest.holo, rest.anti);
      const cplx factor = cplx(0.0, -2.0) * static_cast<double>(m.sign);
      for_sites(g.sites(), [&](std::size_t s) {
        const cplx* src = psi.at(c, s);
        cplx* dst = out.at(oc, s);
        for (std::size_t e = 0; e < blk; ++e) dst[e] += factor * src[e];
      });
    }
  }
  return out;
}

// ---- inner products -------------------------------------------------------

cplx inner_product(const EndForm& psi, const EndForm& xi) {
  if (!psi.same_shape(xi))
    throw std::invalid_argument("inner_product: bidegree or rank mismatch");
  const TorusGrid& g = psi.grid();
  const double w = g.cell_volume() * std::pow(2.0, psi.degree());
  std::vector<double> re(g.sites(), 0.0), im(g.sites(), 0.0);
  const int r = psi.rank();
  for (int c = 0; c < psi.num_components(); ++c) {
    for_sites(g.sites(), [&](std::size_t s) {
      const cplx d = mat_dot(r, psi.at(c, s), xi.at(c, s));
      re[s] += d.real();
      im[s] += d.imag();
    });
  }
  return cplx(w * site_sum(re), w * site_sum(im));
}

double norm_sq(const EndForm& psi) {
  const TorusGrid& g = psi.grid();
  const double w = g.cell_volume() * std::pow(2.0, psi.degree());
  std::vector<double> acc(g.sites(), 0.0);
  const int r = psi.rank();
  for (int c = 0; c < psi.num_components(); ++c) {
    for_sites(g.sites(), [&](std::size_t s) {
      acc[s] += mat_dot(r, psi.at(c, s), psi.at(c, s)).real();
    });
  }
  return w * site_sum(acc);
}

double norm(const EndForm& psi) { return std::sqrt(norm_sq(psi)); }

cplx integrate_trace(const EndForm& psi) {
  if (psi.degree() != 0) throw std::invalid_argument("integrate_trace: 0-forms only");
  const TorusGrid& g = psi.grid();
  std::vector<double> re(g.sites(), 0.0), im(g.sites(), 0.0);
  for_sites(g.sites(), [&](std::size_t s) {
    const cplx t = mat_trace(psi.rank(), psi.at(0, s));
    re[s] = t.real();
    im[s] = t.imag();
  });
  const double v = g.cell_volume();
  return cplx(v * site_sum(re), v * site_sum(im));
}

double max_site_norm(const EndForm& psi) {
  double best = 0.0;
  const int r = psi.rank();
  for (int c = 0; c < psi.num_components(); ++c)
    for (std::size_t s = 0; s < psi.grid().sites(); ++s)
      best = std::max(best, std::sqrt(mat_dot(r, psi.at(c, s), psi.at(c, s)).real()));
  return best;
}

// ---- pointwise algebra ----------------------------------------------------

EndForm dagger(const EndForm& psi) {
  const TorusGrid& g = psi.grid();
  EndForm out(g, psi.rank(), psi.q(), psi.p());
  const double sign = (psi.p() * psi.q()) % 2 ? -1.0 : 1.0;
  const int r = psi.rank();
  for (int c = 0; c < psi.num_components(); ++c) {
    const FormComponent comp = psi.components()[c];
    const int oc = out.component_index(comp.anti, comp.holo);
    for_sites(g.sites(), [&](std::size_t s) {
      cplx* dst = out.at(oc, s);
      mat_adjoint(r, psi.at(c, s), dst);
      if (sign < 0.0)
        for (int e = 0; e < r * r; ++e) dst[e] = -dst[e];
    });
  }
  return out;
}

EndForm wedge(const EndForm& psi, const EndForm& xi) {
  const TorusGrid& g = psi.grid();
  if (!(g == xi.grid()) || psi.rank() != xi.rank())
    throw std::invalid_argument("wedge: grid or rank mismatch");
  const int p = psi.p() + xi.p(), q = psi.q() + xi.q();
  if (p > g.n || q > g.n)
    throw std::invalid_argument("wedge: resulting bidegree out of range");
  EndForm out(g, psi.rank(), p, q);
  const int r = psi.rank();
  for (int c1 = 0; c1 < psi.num_components(); ++c1)
    for (int c2 = 0; c2 < xi.num_components(); ++c2) {
      const Merge m = merge_components(g.n, psi.components()[c1], xi.components()[c2]);
      if (m.sign == 0) continue;
      const int oc = out.component_index(m.comp.holo, m.comp.anti);
      const cplx s(static_cast<double>(m.sign), 0.0);
      for_sites(g.sites(), [&](std::size_t site) {
        mat_mul_acc(r, s, psi.at(c1, site), xi.at(c2, site), out.at(oc, site));
      });
    }
  return out;
}

EndForm wedge_bracket(const EndForm& psi, const EndForm& xi) {
  EndForm out = wedge(psi, xi);
  EndForm rev = wedge(xi, psi);
  const double sign = (psi.degree() * xi.degree()) % 2 ? 1.0 : -1.0;
  rev *= cplx(sign, 0.0);
  out += rev;
  return out;
}

// ---- metric contraction ---------------------------------------------------

namespace {

/// One-sided contraction sum: pairs each dz_g of `a` with dzbar_g of `b`
/// (Lambda factor -2i) and each dzbar_g of `a` with dz_g of `b` (+2i),
/// with the contracted leg moved to the end of a's legs and the front of
/// b's legs.  Coefficients multiply in the order a * b.
void contract_half(const EndForm& a, const EndForm& b, EndForm& out) {
  const TorusGrid& g = a.grid();
  const int n = g.n;
  const int r = a.rank();
  for (int c1 = 0; c1 < a.num_components(); ++c1)
    for (int c2 = 0; c2 < b.num_components(); ++c2) {
      const FormComponent ca = a.components()[c1];
      const FormComponent cb = b.components()[c2];
      for (int gax = 0; gax < n; ++gax) {
        for (int kind = 0; kind < 2; ++kind) {
          // kind 0: dz_g from a, dzbar_g from b; kind 1: the mirror.
          const bool ok = kind == 0
                              ? (ca.holo & (1u << gax)) && (cb.anti & (1u << gax))
                              : (ca.anti & (1u << gax)) && (cb.holo & (1u << gax));
          if (!ok) continue;
          FormComponent ra = ca, rb = cb;
          if (kind == 0) {
            ra.holo &= ~(1u << gax);
            rb.anti &= ~(1u << gax);
          } else {
            ra.anti &= ~(1u << gax);
            rb.holo &= ~(1u << gax);
          }
          const int pos_a = leg_position(n, ca, gax, kind == 0 ? 0 : 1);
          const int moves_a = leg_count(ca) - 1 - pos_a;
          const int pos_b = leg_position(n, cb, gax, kind == 0 ? 1 : 0);
          const Merge m = merge_components(n, ra, rb);
          if (m.sign == 0) continue;
          int sgn = m.sign;
          if ((moves_a + pos_b) % 2) sgn = -sgn;
          const cplx lam = kind == 0 ? cplx(0.0, -2.0) : cplx(0.0, 2.0);
          const cplx factor = lam * static_cast<double>(sgn);
          const int oc = out.component_index(m.comp.holo, m.comp.anti);
          for_sites(g.sites(), [&](std::size_t site) {
            mat_mul_acc(r, factor, a.at(c1, site), b.at(c2, site), out.at(oc, site));
          });
        }
      }
    }
}

}  // namespace

EndForm contract(const EndForm& psi, const EndForm& xi) {
  const TorusGrid& g = psi.grid();
  if (!(g == xi.grid()) || psi.rank() != xi.rank())
    throw std::invalid_argument("contract: grid or rank mismatch");
  const int p = psi.p() + xi.p() - 1, q = psi.q() + xi.q() - 1;
  if (p < 0 || q < 0 || p > g.n || q > g.n)
    throw std::invalid_argument("contract: incompatible bidegrees");
  EndForm acc(g, psi.rank(), p, q);
  contract_half(psi, xi, acc);
  EndForm rev(g, psi.rank(), p, q);
  contract_half(xi, psi, rev);
  const double gr = (psi.degree() * xi.degree()) % 2 ? 1.0 : -1.0;
  rev *= cplx(gr, 0.0);
  acc += rev;
  acc *= cplx(0.0, -1.0);
  return acc;
}

}  // namespace ymh
