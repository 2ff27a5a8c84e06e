#include "paracos/report.hpp"

namespace paracos {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "?";
}

CheckResult check_zero(const std::string& name, const TensorField& residual) {
  auto idx = residual.first_nonzero();
  if (!idx) return {name, CheckStatus::Pass, ""};
  return {name, CheckStatus::Fail, residual.index_label(*idx) + ": " + residual.at(*idx).to_string()};
}

CheckResult check_zero(const std::string& name, const ScalarField& residual) {
  if (residual.is_zero()) return {name, CheckStatus::Pass, ""};
  return {name, CheckStatus::Fail, "residual " + residual.to_string()};
}

CheckResult check_flag(const std::string& name, bool ok, const std::string& failure_detail) {
  return {name, ok ? CheckStatus::Pass : CheckStatus::Fail, ok ? "" : failure_detail};
}

CheckResult skipped(const std::string& name, const std::string& reason) {
  return {name, CheckStatus::Skipped, reason};
}

bool report_ok(const Report& report) {
  for (const auto& c : report) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

const CheckResult* find_check(const Report& report, const std::string& name) {
  for (const auto& c : report) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void append(Report& into, const Report& more) { into.insert(into.end(), more.begin(), more.end()); }

}  // namespace paracos
