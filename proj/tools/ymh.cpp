// Command-line driver: classify | flow | stability | verify | deform.
// Exit codes: 0 ok, 2 config error, 3 data error, 4 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ymh/flow.hpp"
#include "ymh/identities.hpp"
#include "ymh/io.hpp"
#include "ymh/presets.hpp"
#include "ymh/scenario.hpp"
#include "ymh/stability.hpp"
#include "ymh/version.hpp"

namespace {

using namespace ymh;

std::string out_path(const Scenario& sc, const std::string& cli_out,
                     const std::string& fallback) {
  if (!cli_out.empty()) return cli_out;
  if (!sc.out_path.empty()) return sc.out_path;
  return fallback;
}

void write_report(const std::string& path, nlohmann::json j, const Scenario& sc) {
  j["provenance"] = provenance(sc);
  write_text(path, j.dump(2) + "\n");
  std::cout << "wrote " << path << "\n";
}

/// Bulk fields stay binary; the provenance stamp rides as a trailing comment
/// the reader never touches.
void write_field_stamped(const std::string& path, const EndForm& f,
                         const Scenario& sc) {
  write_field_binary(path, f);
  std::ofstream os(path, std::ios::binary | std::ios::app);
  os << "\n# scenario=" << scenario_hash_hex(sc) << " version=" << kToolVersion
     << "\n";
  std::cout << "wrote " << path << "\n";
}

std::vector<int> parse_resolutions(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw ScenarioError("--resolutions: empty list");
  return out;
}

int cmd_classify(const std::string& config, const std::string& out) {
  const Scenario sc = load_scenario(config);
  const HitchinPairState s = build_pair(sc);
  const PairReport rep = classify(s, sc.tol_classify);
  write_report(out_path(sc, out, "classify.json"), to_json(rep), sc);
  return 0;
}

int cmd_flow(const std::string& config, const std::string& out, double t_end,
             const std::string& dt) {
  const Scenario sc = load_scenario(config);
  const HitchinPairState s = build_pair(sc);
  DtPolicy policy;
  if (dt != "auto") policy = DtPolicy::fixed(std::stod(dt));
  const FlowTrajectory traj = run_flow(s, t_end, policy);

  const std::string base = out_path(sc, out, "flow");
  std::ostringstream csv;
  csv << "# scenario=" << scenario_hash_hex(sc) << " version=" << kToolVersion
      << "\n"
      << trajectory_csv(traj);
  write_text(base + ".csv", csv.str());
  std::cout << "wrote " << base << ".csv\n";
  write_field_stamped(base + "_a.ymh1", traj.final_state.a, sc);
  write_field_stamped(base + "_phi.ymh1", traj.final_state.phi, sc);
  return 0;
}

int cmd_stability(const std::string& config, const std::string& out) {
  const Scenario sc = load_scenario(config);
  const HitchinPairState s = build_pair(sc);
  const DeformationPair def = build_deformation(sc, s);
  const StabilityReport rep = stability_classify(s, def, sc.tol_stability);
  write_report(out_path(sc, out, "stability.json"), to_json(rep), sc);
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& resolutions_csv,
               const std::string& out) {
  if (suite.empty()) throw ScenarioError("--suite: empty suite name");
  const std::vector<int> res = parse_resolutions(resolutions_csv);
  const std::uint64_t seed = 2024;
  const int k_max = 2;
  const double amp = 0.4;

  auto pair_at = [&](int pts, int n) {
    return preset_random(TorusGrid(n, pts), 2, seed, k_max, amp);
  };
  std::vector<IdentityReport> reports;
  auto want = [&](const std::string& name) {
    return suite == "all" || suite == name;
  };

  if (want("kahler"))
    reports.push_back(sweep_identity("kahler", res, [&](int pts) {
      const HitchinPairState s = pair_at(pts, 1);
      GradedForm test = GradedForm::from(
          random_bandlimited(TorusGrid(1, pts), 2, 0, 1, seed + 1, k_max, amp));
      return kahler_residual(s, test);
    }));
  if (want("gap-chern"))
    reports.push_back(sweep_identity("gap-chern", res, [&](int pts) {
      const HitchinPairState s = pair_at(pts, 1);
      return laplacian_gap_chern_residual(
          s, random_bandlimited(TorusGrid(1, pts), 2, 0, 0, seed + 2, k_max, amp));
    }));
  if (want("gap-hs"))
    reports.push_back(sweep_identity("gap-hs", res, [&](int pts) {
      const HitchinPairState s = pair_at(pts, 1);
      return laplacian_gap_hs_residual(
          s, random_bandlimited(TorusGrid(1, pts), 2, 0, 0, seed + 3, k_max, amp));
    }));
  if (want("bianchi"))
    reports.push_back(sweep_identity("bianchi", res, [&](int pts) {
      // holds only on pairs with exact holomorphy/integrability
      return bianchi_residual(preset_holomorphic(TorusGrid(2, pts), seed, k_max, amp));
    }));
  if (want("decomposition"))
    reports.push_back(sweep_identity("decomposition", res, [&](int pts) {
      return functional_decomposition_residual(pair_at(pts, 1));
    }));
  if (want("conformal"))
    reports.push_back(sweep_identity("conformal", res, [&](int pts) {
      const TorusGrid g(1, pts);
      return conformal_shift_residual(
          pair_at(pts, 1), random_scalar_bandlimited(g, seed + 4, k_max, amp));
    }));
  if (want("strong"))
    reports.push_back(sweep_identity("strong", res, [&](int pts) {
      return strong_equivalence(pair_at(pts, 1)).gap;
    }));
  if (reports.empty()) throw ScenarioError("unknown suite: " + suite);

  std::ostringstream csv;
  csv << "# suite=" << suite << " version=" << kToolVersion << "\n"
      << identity_csv(reports);
  const std::string path = out.empty() ? "verify.csv" : out;
  write_text(path, csv.str());
  std::cout << "wrote " << path << "\n";
  for (const IdentityReport& r : reports)
    std::cout << r.name << ": " << r.exactness_class << "\n";
  return 0;
}

int cmd_deform(const std::string& config, const std::string& out, int order) {
  const Scenario sc = load_scenario(config);
  const HitchinPairState s = build_pair(sc);
  const DeformationPair def = build_deformation(sc, s);
  const DeformationSeries series = solve_deformation_series(s, def, order);

  const std::string base = out_path(sc, out, "deform");
  nlohmann::json j;
  j["order"] = order;
  j["obstructed"] = series.obstructed;
  j["max_harmonic_norm"] = series.max_harmonic_norm;
  nlohmann::json table = nlohmann::json::array();
  for (double t : {0.05, 0.1, 0.2}) {
    const DeformationPair at = evaluate_series(series, t);
    nlohmann::json row = to_json(mc_residuals(s, at, 1.0));
    row["t"] = t;
    table.push_back(std::move(row));
  }
  j["residuals"] = std::move(table);
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t k = 0; k < series.alpha.size(); ++k) {
    const std::string ap = base + "_alpha" + std::to_string(k) + ".ymh1";
    const std::string bp = base + "_beta" + std::to_string(k) + ".ymh1";
    write_field_stamped(ap, series.alpha[k], sc);
    write_field_stamped(bp, series.beta[k], sc);
    files.push_back({{"order", k}, {"alpha", ap}, {"beta", bp}});
  }
  j["coefficients"] = std::move(files);
  write_report(base + ".json", std::move(j), sc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yang-Mills-Higgs lattice laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ymh::kToolVersion);

  std::string config, out, dt = "auto", suite = "all";
  std::string resolutions = "16,32,64";
  double t_end = 0.1;
  int order = 1;

  CLI::App* c_classify = app.add_subcommand("classify", "Classify a pair");
  c_classify->add_option("--config", config)->required();
  c_classify->add_option("--out", out);

  CLI::App* c_flow = app.add_subcommand("flow", "Run the gradient flow");
  c_flow->add_option("--config", config)->required();
  c_flow->add_option("--out", out);
  c_flow->add_option("--t-end", t_end);
  c_flow->add_option("--dt", dt, "step size or 'auto'");

  CLI::App* c_stab = app.add_subcommand("stability", "Second-variation check");
  c_stab->add_option("--config", config)->required();
  c_stab->add_option("--out", out);

  CLI::App* c_verify = app.add_subcommand("verify", "Identity refinement sweeps");
  c_verify->add_option("--suite", suite);
  c_verify->add_option("--resolutions", resolutions);
  c_verify->add_option("--out", out);

  CLI::App* c_deform = app.add_subcommand("deform", "Deformation series");
  c_deform->add_option("--config", config)->required();
  c_deform->add_option("--out", out);
  c_deform->add_option("--order", order);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_classify->parsed()) return cmd_classify(config, out);
    if (c_flow->parsed()) return cmd_flow(config, out, t_end, dt);
    if (c_stab->parsed()) return cmd_stability(config, out);
    if (c_verify->parsed()) return cmd_verify(suite, resolutions, out);
    if (c_deform->parsed()) return cmd_deform(config, out, order);
  } catch (const ymh::ScenarioError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ymh::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
