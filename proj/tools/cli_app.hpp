#pragma once

#include "superdual/scalars.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace superdual::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kIncomplete = 3 };

struct RunConfig {
  std::string command;
  int m = 2;
  int n = 1;
  int d = 2;
  std::vector<Rational> c;
  /// Empty means symbolic.
  std::optional<Rational> q0;
  std::vector<std::string> suites;
  std::string output;
  bool json = false;
  bool allow_m_equals_n = false;
  bool allow_large_d = false;
  // schurweyl
  std::string check = "centralizer";
  // hecke
  std::optional<std::string> word;
  // export-matrix
  std::string gen;
};

/// The suites run by the "full" preset, in report order.
const std::vector<std::string>& full_preset();
/// "1,3,-2/5" -> rationals.
std::vector<Rational> parse_rational_list(const std::string& s);
/// "symbolic" or "rational:p/r".
std::optional<Rational> parse_q_policy(const std::string& s);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace superdual::cli
