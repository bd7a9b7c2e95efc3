#include "uht/common.hpp"

#include <cstdlib>

namespace uht {

namespace {

std::string summarize(const std::vector<std::string>& problems) {
  if (problems.empty()) return "invariant violated";
  std::string msg = problems.front();
  if (problems.size() > 1) msg += " (and " + std::to_string(problems.size() - 1) + " more)";
  return msg;
}

}  // namespace

InvariantViolation::InvariantViolation(std::vector<std::string> problems)
    : Error(summarize(problems)), problems_(std::move(problems)) {}

long long max_hom_enumeration() {
  if (const char* env = std::getenv("UHT_MAX_HOM_ENUM")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace uht
