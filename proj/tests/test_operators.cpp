#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ymh/operators.hpp"
#include "ymh/parallel.hpp"
#include "ymh/presets.hpp"

using namespace ymh;

namespace {

HitchinPairState rnd_state(const TorusGrid& g, std::uint64_t seed) {
  return preset_random(g, 2, seed, 2, 0.6);
}

EndForm rnd(const TorusGrid& g, int p, int q, std::uint64_t seed) {
  return random_bandlimited(g, 2, p, q, seed, 2, 0.6);
}

GradedForm rnd_graded(const TorusGrid& g, int degree, std::uint64_t seed) {
  GradedForm out = GradedForm::zero(g, 2, degree);
  std::uint64_t k = seed;
  for (EndForm& part : out.parts) part = rnd(g, part.p(), part.q(), ++k);
  return out;
}

// relative adjointness defect of L against Ladj on given test fields
double adj_defect(const cplx lhs, const cplx rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

}  // namespace

TEST_CASE("d' and d'' adjoints are exact") {
  for (int n : {1, 2}) {
    const TorusGrid g(n, 8);
    const HitchinPairState s = rnd_state(g, 21);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}}) {
      if (p + 1 <= n) {
        const EndForm f = rnd(g, p, q, 31), h = rnd(g, p + 1, q, 32);
        CHECK(adj_defect(inner_product(d_prime(s, f), h),
                         inner_product(f, d_prime_adj(s, h))) < 1e-12);
      }
      if (q + 1 <= n) {
        const EndForm f = rnd(g, p, q, 33), h = rnd(g, p, q + 1, 34);
        CHECK(adj_defect(inner_product(d_doubleprime(s, f), h),
                         inner_product(f, d_doubleprime_adj(s, h))) < 1e-12);
      }
    }
  }
}

TEST_CASE("one-form bracket adjoint is exact") {
  const TorusGrid g(1, 8);
  const EndForm w = rnd(g, 1, 0, 41);
  const EndForm f = rnd(g, 0, 1, 42), h = rnd(g, 1, 1, 43);
  CHECK(adj_defect(inner_product(one_form_bracket(w, f), h),
                   inner_product(f, one_form_bracket_adj(w, h, 0, 1))) < 1e-12);
  const EndForm f0 = rnd(g, 0, 0, 44), h0 = rnd(g, 1, 0, 45);
  CHECK(adj_defect(inner_product(one_form_bracket(w, f0), h0),
                   inner_product(f0, one_form_bracket_adj(w, h0, 0, 0))) < 1e-12);
}

TEST_CASE("leibniz rule for d'' against wedge, order 2") {
  // d''(f ^ h) - d''f ^ h - (-1)^deg f ^ d''h is a pure discretization error
  double prev = 0.0;
  for (int pts : {16, 32, 64}) {
    const TorusGrid g(1, pts);
    const HitchinPairState s = rnd_state(g, 51);
    const EndForm f = rnd(g, 0, 0, 52), h = rnd(g, 0, 0, 53);
    const EndForm fh = wedge(f, h);
    EndForm res = d_doubleprime(s, fh);
    res -= wedge(d_doubleprime(s, f), h);
    res -= wedge(f, d_doubleprime(s, h));
    const double r = norm(res);
    if (prev > 0.0) CHECK(r < 0.35 * prev);  // at least order ~1.5 per halving
    prev = r;
  }
}

TEST_CASE("graded form plumbing") {
  const TorusGrid g(2, 6);
  GradedForm f = rnd_graded(g, 1, 61);
  CHECK(f.degree() == 1);
  CHECK(f.parts.size() == 2);
  CHECK(f.part(1, 0) != nullptr);
  CHECK(f.part(2, 0) == nullptr);
  const GradedForm h = rnd_graded(g, 1, 62);
  CHECK(std::abs(inner_product(f, h) -
                 (inner_product(*f.part(0, 1), *h.part(0, 1)) +
                  inner_product(*f.part(1, 0), *h.part(1, 0)))) < 1e-12);
}

TEST_CASE("Hitchin-Simpson operator adjoints are exact") {
  for (int n : {1, 2}) {
    const TorusGrid g(n, 6);
    const HitchinPairState s = rnd_state(g, 71);
    for (int k = 0; k < 2 * n; ++k) {
      const GradedForm f = rnd_graded(g, k, 73 + 2 * k);
      const GradedForm h = rnd_graded(g, k + 1, 74 + 2 * k);
      CHECK(adj_defect(inner_product(cal_dpp(s, f), h),
                       inner_product(f, cal_dpp_adj(s, h))) < 1e-12);
      CHECK(adj_defect(inner_product(cal_dp(s, f), h),
                       inner_product(f, cal_dp_adj(s, h))) < 1e-12);
    }
  }
}

TEST_CASE("D'' Laplacian is self-adjoint and nonnegative") {
  const TorusGrid g(1, 8);
  const HitchinPairState s = rnd_state(g, 81);
  const GradedForm f = rnd_graded(g, 1, 82), h = rnd_graded(g, 1, 83);
  CHECK(adj_defect(inner_product(dpp_laplacian(s, f), h),
                   inner_product(f, dpp_laplacian(s, h))) < 1e-12);
  CHECK(inner_product(dpp_laplacian(s, f), f).real() >= 0.0);
  CHECK(std::abs(inner_product(dpp_laplacian(s, f), f).imag()) < 1e-10);
}

TEST_CASE("nabla components assemble the covariant derivative") {
  const TorusGrid g(1, 8);
  const HitchinPairState s = rnd_state(g, 91);
  const EndForm f = rnd(g, 0, 0, 92);
  // (nabla_x - i nabla_y)/2 = del + [A10, .] acting coefficientwise
  EndForm lhs = nabla_component(s, f, 0);
  lhs += cplx(0.0, -1.0) * nabla_component(s, f, 1);
  lhs *= cplx(0.5, 0.0);
  const EndForm a10 = s.a10();
  EndForm conn(g, s.rank(), 0, 0);  // a10's single coefficient as a 0-form
  conn.raw() = a10.raw();
  EndForm rhs = del(f, 0);
  rhs += wedge_bracket(conn, f);
  CHECK(norm(lhs - rhs) < 1e-11 * (1.0 + norm(rhs)));
  CHECK(nabla_norm_sq(s, f) >= 0.0);
}

TEST_CASE("circ and star actions on constants") {
  const TorusGrid g(1, 6);
  // xi = psi dz + chi dzbar with constant commuting diagonal matrices kills circ
  EndForm psi(g, 2, 1, 0), chi(g, 2, 0, 1);
  fill_constant(psi, 0, {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(2, 0)});
  fill_constant(chi, 0, {cplx(3, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)});
  GradedForm xi = GradedForm::zero(g, 2, 1);
  *xi.part(1, 0) = psi;
  *xi.part(0, 1) = chi;
  const GradedForm omega = GradedForm::from(psi);
  const GradedForm down = circ_action(omega, xi);
  CHECK(std::sqrt(norm_sq(down)) < 1e-12);

  const GradedForm up = star_action(omega, xi);
  CHECK(up.degree() == 2);
  CHECK(std::sqrt(norm_sq(up)) < 1e-12);  // diagonal constants commute
}

TEST_CASE("kernels agree across thread caps") {
  const TorusGrid g(1, 16);
  const HitchinPairState s = rnd_state(g, 101);
  const EndForm f = rnd(g, 0, 0, 102);
  set_thread_cap(1);
  const EndForm a = d_doubleprime(s, f);
  set_thread_cap(0);
  const EndForm b = d_doubleprime(s, f);
  set_thread_cap(-1);
  CHECK(a.raw() == b.raw());
}
