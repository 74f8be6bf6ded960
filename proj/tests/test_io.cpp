#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include "ymh/io.hpp"
#include "ymh/presets.hpp"
#include "ymh/scenario.hpp"

using namespace ymh;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("ymh_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("binary field round-trip is bit exact") {
  TempDir tmp;
  const TorusGrid g(1, 8, 2.0);
  const EndForm f = random_bandlimited(g, 3, 1, 1, 71, 2, 0.9);
  const std::string path = tmp.file("f.ymh1");
  write_field_binary(path, f);
  const EndForm back = read_field_binary(path, 2.0);
  CHECK(back.grid() == g);
  CHECK(back.rank() == 3);
  CHECK(back.p() == 1);
  CHECK(back.q() == 1);
  CHECK(back.raw() == f.raw());
}

TEST_CASE("binary reader rejects malformed files") {
  TempDir tmp;
  const std::string path = tmp.file("bad.ymh1");
  write_text(path, "not a field file");
  CHECK_THROWS(read_field_binary(path));
  CHECK_THROWS(read_field_binary(tmp.file("missing.ymh1")));

  // truncation after a valid header
  const TorusGrid g(1, 8);
  const EndForm f = random_bandlimited(g, 2, 0, 1, 72, 1, 0.5);
  const std::string full = tmp.file("full.ymh1");
  write_field_binary(full, f);
  std::string bytes = read_text(full);
  write_text(tmp.file("cut.ymh1"), bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS(read_field_binary(tmp.file("cut.ymh1")));
}

TEST_CASE("json field round-trip") {
  const TorusGrid g(1, 4, 1.5);
  const EndForm f = random_bandlimited(g, 2, 0, 1, 73, 1, 0.5);
  const EndForm back = field_from_json(field_to_json(f));
  CHECK(back.raw() == f.raw());
  CHECK(back.grid() == g);
}

TEST_CASE("trajectory and identity CSV shapes") {
  FlowTrajectory t;
  t.samples.push_back({0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
  t.samples.push_back({0.1, 0.9, 1e-9, 0.0, 1e-12, 0.1});
  const std::string csv = trajectory_csv(t);
  CHECK(csv.find("t,ymh,holomorphy,integrability,k_herm,dt\n") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  IdentityReport rep;
  rep.name = "kahler";
  rep.resolutions = {8, 16};
  rep.residuals = {1e-3, 2.5e-4};
  rep.rates = {2.0};
  const std::string icsv = identity_csv({rep});
  CHECK(icsv.find("identity,resolution,residual,rate\n") == 0);
  CHECK(icsv.find("kahler,8,") != std::string::npos);
  CHECK(icsv.find(",2\n") != std::string::npos);
}

TEST_CASE("scenario parsing, presets and hashing") {
  const nlohmann::json j = {
      {"grid", {{"n", 1}, {"points_per_axis", 8}}},
      {"bundle", {{"rank", 2}}},
      {"pair", {{"preset", "nilpotent"}, {"c", 1.0}}},
      {"deformation",
       {{"preset", "constant"},
        {"M", {{0, 0}, {1, 0}, {0, 0}, {0, 0}}},
        {"P", {{0, 0}, {0, 0}, {1, 0}, {0, 0}}}}},
  };
  const Scenario sc = scenario_from_json(j);
  const HitchinPairState s = build_pair(sc);
  CHECK(std::abs(s.phi.at(0, 0)[1] - cplx(1.0, 0.0)) < 1e-15);
  const DeformationPair def = build_deformation(sc, s);
  CHECK(std::abs(def.beta.at(0, 3)[2] - cplx(1.0, 0.0)) < 1e-15);

  CHECK(scenario_hash_hex(sc).size() == 16);
  CHECK(scenario_hash_hex(sc) == scenario_hash_hex(scenario_from_json(j)));
  nlohmann::json j2 = j;
  j2["pair"]["c"] = 2.0;
  CHECK(scenario_hash_hex(sc) != scenario_hash_hex(scenario_from_json(j2)));
}

TEST_CASE("scenario error taxonomy") {
  CHECK_THROWS_AS(scenario_from_json(nlohmann::json{{"grid", 1}}), ScenarioError);
  const nlohmann::json bad_preset = {
      {"grid", {{"n", 1}, {"points_per_axis", 8}}},
      {"bundle", {{"rank", 2}}},
      {"pair", {{"preset", "no_such"}}},
  };
  CHECK_THROWS_AS(build_pair(scenario_from_json(bad_preset)), ScenarioError);
  const nlohmann::json missing_file = {
      {"grid", {{"n", 1}, {"points_per_axis", 8}}},
      {"bundle", {{"rank", 2}}},
      {"pair",
       {{"preset", "from_files"}, {"a_path", "/no/a"}, {"phi_path", "/no/phi"}}},
  };
  CHECK_THROWS_AS(build_pair(scenario_from_json(missing_file)), DataError);
}

TEST_CASE("report serialization carries the verdicts") {
  const TorusGrid g(1, 8);
  const PairReport rep = classify(preset_nilpotent(g, 1.0), 1e-8);
  const nlohmann::json j = to_json(rep);
  CHECK(j.at("verdicts").at("hitchin").get<bool>());
  CHECK_FALSE(j.at("verdicts").at("ymh_pair").get<bool>());
  CHECK(j.at("residuals").at("ymh_pair").get<double>() ==
        doctest::Approx(std::sqrt(32.0)));
}
