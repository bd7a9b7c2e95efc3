#include "report.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "uht/common.hpp"

namespace uhtcli {

std::string sha256_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw uht::InvalidInput("cannot read " + p.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

Json truncation_json(const std::optional<uht::TruncationTag>& t) {
  if (!t) return nullptr;
  return Json{{"bound", t->bound}, {"exact_through", t->exact_through}};
}

Json homology_json(const uht::HomologySummary& h) {
  Json degrees = Json::array();
  for (std::size_t k = 0; k < h.degrees.size(); ++k) {
    Json torsion = Json::array();
    for (const auto& t : h.degrees[k].torsion) torsion.push_back(t.str());
    degrees.push_back({{"degree", k}, {"betti", h.degrees[k].betti}, {"torsion", torsion}});
  }
  return Json{{"text", h.to_string()}, {"degrees", degrees}};
}

Json verdict_json(const uht::EquivalenceVerdict& v) {
  Json iso = Json::array();
  for (const auto& d : v.degree_iso) iso.push_back(d ? Json(*d) : Json(nullptr));
  return Json{{"pass", v.pass},
              {"pi0_bijective", v.pi0_bijective},
              {"max_degree", v.max_degree},
              {"degree_iso", iso},
              {"source_homology", homology_json(v.source)},
              {"target_homology", homology_json(v.target)},
              {"disclaimer", v.disclaimer}};
}

Json objectwise_json(const uht::ObjectwiseVerdict& v) {
  Json per = Json::object();
  for (std::size_t i = 0; i < v.objects.size(); ++i) per[v.objects[i]] = verdict_json(v.verdicts[i]);
  return Json{{"pass", v.pass}, {"objects", per}};
}

void RunReport::add_input(const std::filesystem::path& p) { inputs_.emplace_back(p.string(), sha256_file(p)); }

void RunReport::set_error(const std::string& type, const std::string& message, int exit_code) {
  error_ = std::make_pair(type, message);
  error_code_ = exit_code;
}

int RunReport::exit_code() const {
  if (error_) return error_code_;
  for (const auto& c : checks_)
    if (!c.pass) return 1;
  return 0;
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command_;
  Json inputs = Json::array();
  for (const auto& [path, digest] : inputs_) inputs.push_back({{"path", path}, {"sha256", digest}});
  j["inputs"] = inputs;
  j["config"] = {{"max_hom_enumeration", uht::max_hom_enumeration()}};
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    // the two evidence strengths never share a field
    e["structural_isomorphism_certified"] = c.evidence == Evidence::Proxy ? Json(nullptr) : Json(c.pass);
    e["homology_proxy_pass"] = c.evidence == Evidence::Proxy ? Json(c.pass) : Json(nullptr);
    e["evidence"] = c.evidence == Evidence::Structural ? "structural" : c.evidence == Evidence::Proxy ? "proxy" : "exact";
    e["degree_bound"] = c.degree_bound ? Json(*c.degree_bound) : Json(nullptr);
    e["truncation"] = truncation_json(c.truncation);
    e["details"] = c.details;
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;
  j["summary"] = summary_;
  if (error_) j["error"] = {{"type", error_->first}, {"message", error_->second}};
  int code = exit_code();
  j["status"] = code == 0 ? "pass" : code == 1 ? "fail" : "invalid";
  j["exit_code"] = code;
  return j;
}

void write_json(const std::filesystem::path& p, const Json& j) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw uht::InvalidInput("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

}  // namespace uhtcli
