// End-to-end acceptance battery.  Each criterion prints exactly one
// PASS/FAIL line; the exit status is the number of failing criteria.
// Tolerances are pinned here on purpose: loosening them is a code change.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ymh/flow.hpp"
#include "ymh/identities.hpp"
#include "ymh/io.hpp"
#include "ymh/parallel.hpp"
#include "ymh/presets.hpp"
#include "ymh/scenario.hpp"
#include "ymh/stability.hpp"

using namespace ymh;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d (%s): %s%s%s\n", idx, name, pass ? "PASS" : "FAIL",
              detail.empty() ? "" : " - ", detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

const std::vector<cplx> kM = {cplx(0, 0), cplx(1, 0), cplx(0, 0), cplx(0, 0)};
const std::vector<cplx> kP = {cplx(0, 0), cplx(0, 0), cplx(1, 0), cplx(0, 0)};

double lsq_slope(const std::vector<double>& ts, const std::vector<double>& rs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(ts.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(ts[i]), y = std::log(rs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- 1: closed-form flow oracle -------------------------------------------
void c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const TorusGrid g(1, 16);
  const FlowTrajectory traj =
      run_flow(preset_nilpotent(g, 1.0), 0.25, DtPolicy::fixed(1e-3));
  double worst_c = 0.0, worst_ymh = 0.0;
  const double c_end = std::pow(1.0 + 8.0 * 0.25, -0.5);
  const double got_c = std::abs(traj.final_state.phi.at(0, 0)[1]);
  worst_c = std::abs(got_c - c_end) / c_end;
  for (const FlowSample& s : traj.samples) {
    const double want = 8.0 * std::pow(1.0 + 8.0 * s.t, -2.0);
    worst_ymh = std::max(worst_ymh, std::abs(s.ymh - want) / (1.0 + want));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = worst_c <= 1e-6 && worst_ymh <= 1e-6 && secs < 5.0;
  report(1, "closed-form flow oracle", pass,
         fmt("c rel err %.2e, ymh rel err %.2e", worst_c, worst_ymh) +
             fmt(", %.2f s", secs));
}

// ---- 2: first-variation exactness -----------------------------------------
void c2() {
  const TorusGrid g(1, 32);
  const HitchinPairState s = preset_random(g, 2, 101, 2, 0.4);
  const DeformationPair def = deformation_random(g, 2, 102, 2, 0.4);
  const double fv = first_variation(s, def);
  const double fd = directional_derivative_fd(s, def, 1e-5);
  const double err = std::abs(fv - fd) / (1.0 + std::abs(fd));
  report(2, "first-variation exactness", err <= 1e-6, fmt("rel err %.2e", err));
}

// ---- 3: second-variation bridge -------------------------------------------
void c3() {
  bool pass = true;
  std::string detail;
  // constant-coefficient battery on strong bases; the deformations must be
  // admissible (first-order constraint residuals zero), which on the diagonal
  // base forces diagonal coefficients
  const TorusGrid g16(1, 16);
  const std::vector<std::pair<HitchinPairState, DeformationPair>> battery = [&] {
    std::vector<std::pair<HitchinPairState, DeformationPair>> b;
    b.emplace_back(preset_trivial(g16, 2), deformation_constant(g16, kM, kP));
    b.emplace_back(preset_diagonal_higgs(g16, {cplx(1, 0), cplx(-1, 0)}),
                   deformation_constant(
                       g16, {cplx(0.5, 0), cplx(0, 0), cplx(0, 0), cplx(-0.2, 0)},
                       {cplx(0.3, 0), cplx(0, 0), cplx(0, 0), cplx(0.7, 0)}));
    return b;
  }();
  for (const auto& [base, def] : battery) {
    const double q2 = 2.0 * quadratic_form_Q(base, def).Q_value;
    const double fd = second_variation_fd(base, def, 1e-3);
    const double err = std::abs(q2 - fd) / (1.0 + std::abs(fd));
    if (err > 1e-6) pass = false;
    detail += fmt("const %.2e ", err);
  }
  // varying case: alpha = e^{2 pi i x} M dzbar on the trivial base; the gap
  // must shrink at least like spacing^2, which is trivially met when it sits
  // at machine precision (the flat-base operators commute exactly, so the
  // slope of a noise floor is meaningless there)
  std::vector<double> gaps;
  bool machine_exact = true;
  for (int pts : {16, 32, 64}) {
    const TorusGrid g(1, pts);
    const HitchinPairState base = preset_trivial(g, 2);
    DeformationPair def{EndForm(g, 2, 0, 1), EndForm(g, 2, 1, 0)};
    for_sites_serial(g.sites(), [&](std::size_t site) {
      const cplx ph = std::exp(cplx(0.0, 2.0 * M_PI * g.coord(site, 0)));
      cplx* m = def.alpha01.at(0, site);
      for (std::size_t e = 0; e < def.alpha01.block(); ++e) m[e] = ph * kM[e];
    });
    const double q2 = 2.0 * quadratic_form_Q(base, def).Q_value;
    const double fd = second_variation_fd(base, def, 1e-3);
    gaps.push_back(std::abs(q2 - fd));
    if (gaps.back() > 1e-9 * (1.0 + std::abs(fd))) machine_exact = false;
  }
  if (machine_exact) {
    detail += "varying machine-exact";
  } else {
    const double slope = lsq_slope({1.0 / 16, 1.0 / 32, 1.0 / 64}, gaps);
    if (slope < 1.7) pass = false;
    detail += fmt("varying order %.2f", slope);
  }
  report(3, "second-variation bridge", pass, detail);
}

// ---- 4: Kaehler identities machine exact ----------------------------------
void c4() {
  double worst = 0.0;
  for (int pts : {16, 32, 64}) {
    const TorusGrid g(1, pts);
    const HitchinPairState s = preset_random(g, 2, 111, 2, 0.5);
    for (int k = 1; k <= 2; ++k) {
      GradedForm test = GradedForm::zero(g, 2, k);
      std::uint64_t seed = 200 + 10 * pts + k;
      for (EndForm& part : test.parts)
        part = random_bandlimited(g, 2, part.p(), part.q(), ++seed, 2, 0.5);
      const double scale = 1.0 + std::sqrt(norm_sq(test));
      worst = std::max(worst, kahler_residual(s, test) / scale);
    }
  }
  report(4, "Kaehler identities machine-exact", worst <= 1e-11,
         fmt("worst scaled residual %.2e", worst));
}

// ---- 5: order-2 identity suite --------------------------------------------
void c5() {
  bool pass = true;
  std::string detail;
  auto sweep = [&](const char* name, const std::vector<int>& res,
                   const std::function<double(int)>& fn) {
    const IdentityReport rep = sweep_identity(name, res, fn);
    for (double r : rep.rates)
      if (r < 1.7 || r > 2.3) pass = false;
    detail += std::string(name) + fmt(" %.2f ", rep.rates.empty() ? 0.0 : rep.rates.back());
  };
  const std::vector<int> res = {16, 32, 64};
  sweep("gap-chern", res, [](int pts) {
    return laplacian_gap_chern_residual(
        preset_random(TorusGrid(1, pts), 2, 121, 2, 0.5),
        random_bandlimited(TorusGrid(1, pts), 2, 0, 0, 122, 2, 0.5));
  });
  sweep("gap-hs", res, [](int pts) {
    return laplacian_gap_hs_residual(
        preset_random(TorusGrid(1, pts), 2, 123, 2, 0.5),
        random_bandlimited(TorusGrid(1, pts), 2, 0, 0, 124, 2, 0.5));
  });
  // degree-3 forms vanish on a surface, so the Bianchi sweep needs n = 2, and
  // the identity only holds on pairs with exact holomorphy/integrability, so
  // the input is the gauge-transformed preset; 64 points per axis is a 16.8M
  // site lattice (tens of minutes per residual on one core), hence the
  // shortened ladder
  sweep("bianchi", {16, 32}, [](int pts) {
    return bianchi_residual(preset_holomorphic(TorusGrid(2, pts), 125, 1, 0.5));
  });
  sweep("decomposition", res, [](int pts) {
    return functional_decomposition_residual(
        preset_random(TorusGrid(1, pts), 2, 126, 2, 0.5));
  });
  sweep("conformal", res, [](int pts) {
    const TorusGrid g(1, pts);
    return conformal_shift_residual(preset_random(g, 2, 127, 2, 0.5),
                                    random_scalar_bandlimited(g, 128, 2, 0.5));
  });
  report(5, "order-2 identity suite", pass, detail);
}

// ---- 6: flow monotonicity and Hitchin preservation ------------------------
void c6() {
  const TorusGrid g(1, 32);
  // band-limited a; phi = c Id commutes with everything, so the pair is a
  // Hitchin pair to machine precision
  EndForm phi(g, 2, 1, 0);
  fill_constant(phi, 0, {cplx(0.4, 0), cplx(0, 0), cplx(0, 0), cplx(0.4, 0)});
  const HitchinPairState s(random_bandlimited(g, 2, 0, 1, 131, 2, 0.3), phi);
  const double h0 = norm(d_doubleprime(s, s.phi));
  bool pass = h0 <= 1e-12;
  double worst_h = h0;
  bool monotone = true;
  try {
    const FlowTrajectory traj = run_flow(s, 0.1, DtPolicy{});
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      worst_h = std::max(worst_h, traj.samples[i].holomorphy);
      if (i > 0 && traj.samples[i].ymh > traj.samples[i - 1].ymh + 1e-12)
        monotone = false;
    }
  } catch (const std::exception&) {
    pass = false;
    monotone = false;
  }
  const double bound = 10.0 * g.spacing() * g.spacing();
  pass = pass && monotone && worst_h <= bound;
  report(6, "flow monotonicity + Hitchin preservation", pass,
         fmt("worst holomorphy %.2e (bound %.2e)", worst_h, bound) +
             (monotone ? "" : ", YMH increased"));
}

// ---- 7: classification battery --------------------------------------------
void c7() {
  const TorusGrid g(1, 16);
  bool pass = true;
  std::string detail;

  const PairReport triv = classify(preset_trivial(g, 2), 1e-8);
  if (!(triv.hermitian && triv.strong && triv.degenerate &&
        std::abs(triv.lambda_avg) <= 1e-12))
    pass = false, detail += "trivial ";

  const PairReport nil = classify(preset_nilpotent(g, 1.0), 1e-8);
  const double res2 = nil.ymh_pair_residual * nil.ymh_pair_residual;
  if (!(nil.hitchin && !nil.ymh_pair && std::abs(res2 - 32.0) <= 1e-9 &&
        std::abs(nil.det_min_abs - 4.0) <= 1e-9 &&
        std::abs(nil.det_max_abs - 4.0) <= 1e-9))
    pass = false, detail += fmt("nilpotent res2=%.12f ", res2);

  const PairReport diag =
      classify(preset_diagonal_higgs(g, {cplx(1, 0), cplx(-1, 0)}), 1e-8);
  if (!(diag.strong && diag.degenerate)) pass = false, detail += "diagonal ";

  report(7, "classification battery", pass, detail.empty() ? "all verdicts as expected" : detail);
}

// ---- 8: deformation series ------------------------------------------------
void c8() {
  const TorusGrid g(1, 16);
  const HitchinPairState base = preset_trivial(g, 2);
  const DeformationPair def = deformation_constant(g, kM, kP);
  bool pass = true;
  std::string detail;

  const std::vector<double> ts = {0.05, 0.1, 0.2};
  for (int K : {1, 2, 3}) {
    const DeformationSeries series = solve_deformation_series(base, def, K);
    std::vector<double> rs;
    for (double t : ts) {
      const McResiduals r = mc_residuals(base, evaluate_series(series, t), 1.0);
      rs.push_back(std::sqrt(r.r1 * r.r1 + r.r2 * r.r2 + r.r3 * r.r3));
    }
    const double slope = lsq_slope(ts, rs);
    if (std::abs(slope - (K + 1)) > 0.3) pass = false;
    detail += fmt("K=%.0f slope %.2f ", double(K), slope);
    if (series.obstructed) detail += "(obstructed) ";
  }

  // Green operator against a manufactured solution
  GradedForm x0 = GradedForm::zero(g, 2, 1);
  *x0.part(0, 1) = random_bandlimited(g, 2, 0, 1, 141, 2, 0.5);
  *x0.part(1, 0) = random_bandlimited(g, 2, 1, 0, 142, 2, 0.5);
  const GradedForm y = dpp_laplacian(base, x0);
  const GreenResult green = green_apply(base, y);
  const double rel = std::sqrt(norm_sq(dpp_laplacian(base, green.x) - y) / norm_sq(y));
  if (!(green.converged && rel <= 1e-7)) pass = false;
  detail += fmt("green rel %.2e", rel);

  report(8, "deformation series orders", pass, detail);
}

// ---- 9: determinism --------------------------------------------------------
void c9() {
  const nlohmann::json j = {
      {"grid", {{"n", 1}, {"points_per_axis", 16}}},
      {"bundle", {{"rank", 2}}},
      {"pair", {{"preset", "random"}, {"seed", 7}, {"k_max", 2}, {"amplitude", 0.5}}},
  };
  auto run_once = [&](int cap) {
    set_thread_cap(cap);
    const Scenario sc = scenario_from_json(j);
    const HitchinPairState s = build_pair(sc);
    nlohmann::json out = to_json(classify(s, sc.tol_classify));
    out["provenance"] = provenance(sc);
    const FlowTrajectory traj = run_flow(s, 0.002, DtPolicy::fixed(1e-3));
    return out.dump() + "\n" + trajectory_csv(traj);
  };
  const std::string a = run_once(0), b = run_once(0), serial = run_once(1);
  set_thread_cap(-1);
  const bool pass = a == b && a == serial;
  report(9, "determinism", pass,
         pass ? "bit-identical across runs and thread caps"
              : "outputs differ between runs");
}

}  // namespace

int main() {
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  std::printf("%d of 9 criteria failing\n", g_failures);
  return g_failures;
}
