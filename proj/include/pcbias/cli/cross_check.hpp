#pragma once

#include "pcbias/boolean_function.hpp"
#include "pcbias/dyadic.hpp"
#include "pcbias/parity_check.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcbias::cli {

enum class Verdict { consistent, inconsistent, skipped };

std::string_view to_string(Verdict verdict);

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CrossCheckResult {
  Verdict verdict = Verdict::consistent;
  std::string reason;
  std::vector<CheckResult> checks;
  std::optional<DyadicRational> exact;
};

/// Runs both exact methods, the oracle (when within budget), the bounds and
/// the closed forms on one instance and checks every relation they must
/// satisfy. Specs that do not PASS independence are skipped.
CrossCheckResult cross_check(const BooleanFunction& f, const ParityCheckSpec& spec, unsigned threads = 0);

}  // namespace pcbias::cli
