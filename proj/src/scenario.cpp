#include "ymh/scenario.hpp"

#include <cstdio>

#include "ymh/io.hpp"
#include "ymh/parallel.hpp"
#include "ymh/presets.hpp"
#include "ymh/stability.hpp"
#include "ymh/version.hpp"

namespace ymh {

namespace {

cplx parse_cplx(const nlohmann::json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return cplx(j.at(0).get<double>(), j.at(1).get<double>());
  throw ScenarioError("scenario: complex values are numbers or [re, im] pairs");
}

std::vector<cplx> parse_cplx_list(const nlohmann::json& j) {
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(parse_cplx(e));
  return out;
}

EndForm load_field(const std::string& path, const TorusGrid& grid, int rank,
                   int p, int q) {
  EndForm f = [&] {
    try {
      return read_field_binary(path, grid.side_length);
    } catch (const std::exception& e) {
      throw DataError(e.what());
    }
  }();
  if (!(f.grid() == grid) || f.rank() != rank || f.p() != p || f.q() != q)
    throw DataError("field file " + path + " does not match the scenario grid/rank/bidegree");
  return f;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario sc;
  try {
    const auto& g = j.at("grid");
    sc.grid = TorusGrid(g.at("n").get<int>(), g.at("points_per_axis").get<int>(),
                        g.value("side_length", 1.0));
    sc.rank = j.at("bundle").at("rank").get<int>();
    if (sc.rank < 1) throw ScenarioError("scenario: rank must be positive");
    sc.pair = j.at("pair");
    if (!sc.pair.contains("preset"))
      throw ScenarioError("scenario: pair.preset is required");
    if (j.contains("deformation")) sc.deformation = j.at("deformation");
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      sc.tol_classify = t.value("classify", sc.tol_classify);
      sc.tol_stability = t.value("stability", sc.tol_stability);
      sc.tol_solver = t.value("solver", sc.tol_solver);
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      sc.out_path = o.value("path", std::string());
      sc.out_format = o.value("format", std::string("json"));
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  sc.canonical = j.dump();  // object keys are stored sorted, so this is canonical
  return sc;
}

Scenario load_scenario(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("cannot read scenario ") + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

HitchinPairState build_pair(const Scenario& sc) {
  const std::string preset = sc.pair.at("preset").get<std::string>();
  try {
    if (preset == "trivial") return preset_trivial(sc.grid, sc.rank);
    if (preset == "diagonal_higgs") {
      const std::vector<cplx> diag = parse_cplx_list(sc.pair.at("diag"));
      if (static_cast<int>(diag.size()) != sc.rank)
        throw ScenarioError("diagonal_higgs: diag length must equal the rank");
      return preset_diagonal_higgs(sc.grid, diag);
    }
    if (preset == "nilpotent") {
      if (sc.rank != 2) throw ScenarioError("nilpotent preset needs rank 2");
      return preset_nilpotent(sc.grid, sc.pair.value("c", 1.0));
    }
    if (preset == "random")
      return preset_random(sc.grid, sc.rank, sc.pair.at("seed").get<std::uint64_t>(),
                           sc.pair.at("k_max").get<int>(),
                           sc.pair.at("amplitude").get<double>());
    if (preset == "from_files")
      return {load_field(sc.pair.at("a_path").get<std::string>(), sc.grid, sc.rank, 0, 1),
              load_field(sc.pair.at("phi_path").get<std::string>(), sc.grid, sc.rank, 1, 0)};
  } catch (const ScenarioError&) {
    throw;
  } catch (const DataError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("pair preset: ") + e.what());
  }
  throw ScenarioError("unknown pair preset: " + preset);
}

DeformationPair build_deformation(const Scenario& sc, const HitchinPairState& base) {
  if (!sc.deformation)
    throw ScenarioError("scenario has no deformation section");
  const nlohmann::json& d = *sc.deformation;
  const std::string preset = d.at("preset").get<std::string>();
  try {
    if (preset == "constant")
      return deformation_constant(sc.grid, parse_cplx_list(d.at("M")),
                                  parse_cplx_list(d.at("P")));
    if (preset == "random")
      return deformation_random(sc.grid, sc.rank, d.at("seed").get<std::uint64_t>(),
                                d.at("k_max").get<int>(),
                                d.at("amplitude").get<double>());
    if (preset == "weak_test") {
      EndForm v01(sc.grid, 1, 0, 1);
      for_sites_serial(sc.grid.sites(),
                       [&](std::size_t s) { *v01.at(0, s) = cplx(1.0, 0.0); });
      return weak_test_deformation(base, v01, parse_cplx(d.at("c")));
    }
    if (preset == "contraction") {
      std::vector<cplx> v(static_cast<std::size_t>(sc.grid.n), cplx(0.0, 0.0));
      v[0] = cplx(1.0, 0.0);
      if (d.contains("v")) v = parse_cplx_list(d.at("v"));
      return contraction_deformation(base, v, theta(base)).def;
    }
    if (preset == "from_files")
      return {load_field(d.at("alpha_path").get<std::string>(), sc.grid, sc.rank, 0, 1),
              load_field(d.at("beta_path").get<std::string>(), sc.grid, sc.rank, 1, 0)};
  } catch (const ScenarioError&) {
    throw;
  } catch (const DataError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("deformation preset: ") + e.what());
  }
  throw ScenarioError("unknown deformation preset: " + preset);
}

std::string scenario_hash_hex(const Scenario& sc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : sc.canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json provenance(const Scenario& sc) {
  return {{"scenario_hash", scenario_hash_hex(sc)}, {"tool_version", kToolVersion}};
}

}  // namespace ymh
