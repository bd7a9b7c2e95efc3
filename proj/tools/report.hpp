#pragma once

// Run reports: command echo, input digests, per-check verdicts and status.
// Nothing time-dependent goes into the JSON so repeated runs compare equal.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uht/homology.hpp"
#include "uht/io.hpp"

namespace uhtcli {

using uht::Json;

std::string sha256_file(const std::filesystem::path& p);

Json truncation_json(const std::optional<uht::TruncationTag>& t);
Json homology_json(const uht::HomologySummary& h);
Json verdict_json(const uht::EquivalenceVerdict& v);
Json objectwise_json(const uht::ObjectwiseVerdict& v);

/// How strong the evidence behind a check is. Structural checks exhibit an
/// isomorphism or an exact count; proxy checks compare homology only.
enum class Evidence { Structural, Proxy, Exact };

struct Check {
  std::string name;
  bool pass = false;
  Evidence evidence = Evidence::Structural;
  std::optional<int> degree_bound;
  std::optional<uht::TruncationTag> truncation;
  Json details = Json::object();
};

class RunReport {
 public:
  explicit RunReport(std::vector<std::string> command) : command_(std::move(command)) {}

  void add_input(const std::filesystem::path& p);
  void add(Check c) { checks_.push_back(std::move(c)); }
  void set_summary(Json s) { summary_ = std::move(s); }
  void set_error(const std::string& type, const std::string& message, int exit_code);

  int exit_code() const;
  Json to_json() const;

 private:
  std::vector<std::string> command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<Check> checks_;
  Json summary_ = Json::object();
  std::optional<std::pair<std::string, std::string>> error_;
  int error_code_ = 0;
};

void write_json(const std::filesystem::path& p, const Json& j);

}  // namespace uhtcli
