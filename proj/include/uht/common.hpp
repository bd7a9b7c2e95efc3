#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace uht {

using Int = boost::multiprecision::cpp_int;

/// Base class for all library errors. `exit_code()` is the CLI status the
/// error maps to: 2 for malformed input, 1 for everything else.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

/// Input that cannot be decoded at all (bad JSON, unknown ids, wrong shapes).
class InvalidInput : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Decoded data that violates a structural invariant (composition not total,
/// simplicial identity broken, functoriality fails, ...).
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class NotChainFinite : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

class SizeBoundExceeded : public Error {
 public:
  using Error::Error;
};

class PushoutMismatch : public Error {
 public:
  using Error::Error;
};

/// Attached to every output computed from a truncated construction.
/// Homology of the output is guaranteed correct in degrees <= exact_through.
struct TruncationTag {
  int bound = 0;
  int exact_through = -1;

  static TruncationTag at(int d) { return TruncationTag{d, d - 1}; }
  bool operator==(const TruncationTag&) const = default;
};

/// Bound on candidate assignments explored by exhaustive hom enumeration.
/// Reads UHT_MAX_HOM_ENUM, defaulting to 10^6.
long long max_hom_enumeration();

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace uht
