#pragma once

#include "superdual/report.hpp"
#include "superdual/uq_rep.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace superdual {

/// Thrown when suite parameters violate a hypothesis.
class SuiteRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

VerificationReport run_hecke_suite(int m, int n, int d);
VerificationReport run_commuting_suite(int m, int n, int d);
VerificationReport run_descent_suite(int m, int n, int d);

struct QsOptions {
  /// Check at q = q0 instead of over Q(q).
  std::optional<Rational> q0;
  bool allow_m_equals_n = false;
};

/// Affine quantum superalgebra relations on V(c_1) (x) ... (x) V(c_d).
VerificationReport run_qs_affine_suite(int m, int n, const std::vector<Rational>& c, const QsOptions& opt = {});

/// Intertwining, cocycle identities and Yang-Baxter for the R-matrix.
VerificationReport run_hopf_suite(int m, int n);

Json report_to_json(const VerificationReport& r, const std::string& tool_version);

/// Runs named check thunks on the worker pool; results keep the input order.
struct CheckTask {
  std::string name;
  std::function<CheckResult()> run;
};
std::vector<CheckResult> run_tasks(const std::vector<CheckTask>& tasks);

}  // namespace superdual
