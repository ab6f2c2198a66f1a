#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bergman {

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  /// Multiplies omega_{n-1} in the diagonal-identity check. Anything other
  /// than 1 simulates a broken constant; used to test that the suite fails.
  double omega_fault = 1.0;
};

struct CheckResult {
  std::string id;
  std::string desc;
  /// Worst measured quantity (an error, a deviation or a fitted order).
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// Extra context for failures, e.g. the worst case.
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  /// {"checks": [{id, desc, value, tol, pass}], "verdict": "pass" | "fail"}
  std::string to_json() const;
};

struct CheckSpec {
  std::string id;
  VerifyLevel level;
  /// Acceptance criterion number, 0 for checks that only guard an invariant.
  int criterion;
  std::function<CheckResult(const VerifyOptions&)> run;
};

/// Every registered check, in report order.
const std::vector<CheckSpec>& verify_checks();

/// Quick runs the quick checks; full runs all of them.
VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace bergman
