#include "ymh/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ymh {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

std::string verdict_name(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::stable: return "stable";
    case StabilityVerdict::semi_stable: return "semi-stable";
    case StabilityVerdict::unstable: return "unstable";
    default: return "indeterminate";
  }
}

}  // namespace

void write_field_binary(const std::string& path, const EndForm& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_field_binary: cannot open " + path);
  os.write("YMH1", 4);
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(f.grid().n));
  put_u32(os, static_cast<std::uint32_t>(f.grid().points_per_axis));
  put_u32(os, static_cast<std::uint32_t>(f.rank()));
  put_u32(os, static_cast<std::uint32_t>(f.p()));
  put_u32(os, static_cast<std::uint32_t>(f.q()));
  os.write(reinterpret_cast<const char*>(f.raw().data()),
           static_cast<std::streamsize>(f.raw().size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write_field_binary: write failed for " + path);
}

EndForm read_field_binary(const std::string& path, double side_length) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_field_binary: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "YMH1", 4) != 0)
    throw std::runtime_error("read_field_binary: bad magic in " + path);
  const std::uint32_t version = get_u32(is);
  if (version != 1) throw std::runtime_error("read_field_binary: unsupported version");
  const int n = static_cast<int>(get_u32(is));
  const int points = static_cast<int>(get_u32(is));
  const int rank = static_cast<int>(get_u32(is));
  const int p = static_cast<int>(get_u32(is));
  const int q = static_cast<int>(get_u32(is));
  EndForm f(TorusGrid(n, points, side_length), rank, p, q);
  is.read(reinterpret_cast<char*>(f.raw().data()),
          static_cast<std::streamsize>(f.raw().size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("read_field_binary: truncated file " + path);
  f.check_finite();
  return f;
}

nlohmann::json field_to_json(const EndForm& f) {
  nlohmann::json j;
  j["n"] = f.grid().n;
  j["points_per_axis"] = f.grid().points_per_axis;
  j["side_length"] = f.grid().side_length;
  j["rank"] = f.rank();
  j["bidegree"] = {f.p(), f.q()};
  nlohmann::json comps = nlohmann::json::array();
  for (int c = 0; c < f.num_components(); ++c) {
    nlohmann::json sites = nlohmann::json::array();
    for (std::size_t s = 0; s < f.grid().sites(); ++s) {
      nlohmann::json mat = nlohmann::json::array();
      const cplx* m = f.at(c, s);
      for (std::size_t e = 0; e < f.block(); ++e)
        mat.push_back({m[e].real(), m[e].imag()});
      sites.push_back(std::move(mat));
    }
    comps.push_back(std::move(sites));
  }
  j["components"] = std::move(comps);
  return j;
}

EndForm field_from_json(const nlohmann::json& j) {
  const TorusGrid g(j.at("n").get<int>(), j.at("points_per_axis").get<int>(),
                    j.value("side_length", 1.0));
  EndForm f(g, j.at("rank").get<int>(), j.at("bidegree").at(0).get<int>(),
            j.at("bidegree").at(1).get<int>());
  const auto& comps = j.at("components");
  if (static_cast<int>(comps.size()) != f.num_components())
    throw std::runtime_error("field_from_json: component count mismatch");
  for (int c = 0; c < f.num_components(); ++c) {
    const auto& sites = comps.at(c);
    if (sites.size() != g.sites())
      throw std::runtime_error("field_from_json: site count mismatch");
    for (std::size_t s = 0; s < g.sites(); ++s) {
      cplx* m = f.at(c, s);
      const auto& mat = sites.at(s);
      if (mat.size() != f.block())
        throw std::runtime_error("field_from_json: entry count mismatch");
      for (std::size_t e = 0; e < f.block(); ++e)
        m[e] = cplx(mat.at(e).at(0).get<double>(), mat.at(e).at(1).get<double>());
    }
  }
  f.check_finite();
  return f;
}

void write_field_json(const std::string& path, const EndForm& f) {
  write_text(path, field_to_json(f).dump(2) + "\n");
}

EndForm read_field_json(const std::string& path) {
  return field_from_json(nlohmann::json::parse(read_text(path)));
}

nlohmann::json to_json(const PairReport& r) {
  return nlohmann::json{
      {"tolerance", r.tolerance},
      {"residuals",
       {{"holomorphy", r.holomorphy},
        {"integrability", r.integrability},
        {"curvature02", r.curvature02},
        {"k_hermiticity", r.k_hermiticity},
        {"ymh_pair", r.ymh_pair_residual},
        {"strong_dprime", r.strong_dprime},
        {"strong_dpprime", r.strong_dpprime},
        {"strong_bracket_phi", r.strong_br_phi},
        {"strong_bracket_phistar", r.strong_br_phistar},
        {"hermitian", r.hermitian_residual}}},
      {"lambda", {{"average", r.lambda_avg}, {"bundle", r.lambda_bundle}}},
      {"det", {{"min_abs", r.det_min_abs}, {"max_abs", r.det_max_abs}}},
      {"verdicts",
       {{"hitchin", r.hitchin},
        {"ymh_pair", r.ymh_pair},
        {"strong", r.strong},
        {"hermitian", r.hermitian},
        {"degenerate", r.degenerate}}}};
}

nlohmann::json to_json(const McResiduals& r) {
  return nlohmann::json{{"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3}};
}

nlohmann::json to_json(const StabilityReport& r) {
  return nlohmann::json{
      {"Q", r.Q_value},
      {"components",
       {{"bracket_term", r.bracket_term},
        {"dstar_term", r.dstar_term},
        {"higgs_term", r.higgs_term}}},
      {"admissibility", to_json(r.admissibility)},
      {"second_variation_fd", r.second_variation},
      {"verdict", verdict_name(r.verdict)},
      {"q_disagreement", r.q_disagreement},
      {"base_strong", r.base_strong}};
}

nlohmann::json to_json(const IdentityReport& r) {
  return nlohmann::json{{"identity", r.name},
                        {"resolutions", r.resolutions},
                        {"residuals", r.residuals},
                        {"rates", r.rates},
                        {"exactness_class", r.exactness_class}};
}

std::string trajectory_csv(const FlowTrajectory& t) {
  std::ostringstream os;
  os.precision(17);
  os << "t,ymh,holomorphy,integrability,k_herm,dt\n";
  for (const FlowSample& s : t.samples)
    os << s.t << ',' << s.ymh << ',' << s.holomorphy << ',' << s.integrability
       << ',' << s.k_hermiticity << ',' << s.dt << '\n';
  return os.str();
}

std::string identity_csv(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "identity,resolution,residual,rate\n";
  for (const IdentityReport& r : reports)
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
      os << r.name << ',' << r.resolutions[i] << ',' << r.residuals[i] << ',';
      if (i > 0) os << r.rates[i - 1];
      os << '\n';
    }
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_text: cannot open " + path);
  os << content;
  if (!os) throw std::runtime_error("write_text: write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_text: cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace ymh
