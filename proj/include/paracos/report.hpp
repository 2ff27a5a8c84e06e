#pragma once

#include <string>
#include <vector>

#include "paracos/tensor.hpp"

namespace paracos {

enum class CheckStatus { Pass, Fail, Skipped };

// One named check; detail holds the witness component on failure or the reason when skipped.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

using Report = std::vector<CheckResult>;

const char* status_name(CheckStatus s);

CheckResult check_zero(const std::string& name, const TensorField& residual);
CheckResult check_zero(const std::string& name, const ScalarField& residual);
CheckResult check_flag(const std::string& name, bool ok, const std::string& failure_detail = "");
CheckResult skipped(const std::string& name, const std::string& reason);

// True when nothing failed (skips are fine).
bool report_ok(const Report& report);
const CheckResult* find_check(const Report& report, const std::string& name);
void append(Report& into, const Report& more);

}  // namespace paracos
