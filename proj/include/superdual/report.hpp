#pragma once

#include "superdual/super_tensor.hpp"

#include <json.hpp>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace superdual {

using Json = nlohmann::ordered_json;

/// One nonzero entry of a residual matrix.
struct Witness {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string value;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::size_t residual_nnz = 0;
  std::optional<Witness> witness;
  double time_ms = 0;
  /// Optional extra data (dimensions, identities checked).
  Json info = Json::object();
};

/// Residual lhs - rhs; passes when it is exactly zero.
CheckResult compare_ops(std::string name, const SuperOp& lhs, const SuperOp& rhs);
CheckResult check_zero(std::string name, const SuperOp& residual);
CheckResult compare_mats(std::string name, const SparseMat<RatFunc>& lhs, const SparseMat<RatFunc>& rhs);

/// Runs fn() -> CheckResult and records wall time.
template <class Fn>
CheckResult timed(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r = fn();
  r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

struct VerificationReport {
  std::string suite;
  Json params = Json::object();
  std::vector<CheckResult> checks;
  /// Set when a hypothesis was overridden and some relations are not covered.
  bool incomplete = false;
  std::string note;

  bool all_passed() const;
  /// "pass", "fail" or "incomplete".
  std::string overall() const;
};

Json check_to_json(const CheckResult& c);
CheckResult check_from_json(const Json& j);

}  // namespace superdual
