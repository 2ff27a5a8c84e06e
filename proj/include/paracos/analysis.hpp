#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paracos/definition.hpp"
#include "paracos/report.hpp"

namespace paracos {

using Json = nlohmann::ordered_json;

// {"exact": "p/q", "float": x} for constants, {"expression": ...} otherwise.
Json scalar_json(const ScalarField& f);
Json rational_json(const Rational& q);

struct ReportSection {
  std::string name;
  std::string skip_reason;     // set when the section did not run
  bool theorem_backed = true;  // failures count as engine or input bugs
  Report checks;
  Json values = Json::object();

  bool ran() const { return skip_reason.empty(); }
};

enum ExitCode { ExitOk = 0, ExitStructural = 2, ExitIdentityFailed = 3, ExitParse = 4 };

struct AnalysisReport {
  std::string name;
  int dim = 0;
  std::vector<Rational> point;
  bool loaded = false;
  bool axioms_ok = false;
  bool is_apc = false;
  std::string load_error;
  std::vector<ReportSection> sections;

  const ReportSection* section(const std::string& name) const;
  // First failing theorem-backed check, if any.
  const CheckResult* first_failure() const;
  int exit_code() const;

  Json to_json() const;
  std::string render_json() const;
  // 0: summary only, 1: sections and failures, 2: every check.
  std::string render_text(int verbosity = 1) const;
};

struct AnalyzeOptions {
  std::optional<std::vector<Rational>> point;  // replaces the definition's base point
};

// axioms -> alpha -> A, h -> identities -> curvature -> nullity -> (3D) h-type and frames -> harmonicity.
// Stage errors become report entries.
AnalysisReport run_analyze(const ManifoldDefinition& def, const AnalyzeOptions& options = {},
                           const std::string& name = "");

enum class DeformKind { Homothetic, Conformal };

struct DeformRequest {
  DeformKind kind = DeformKind::Homothetic;
  Rational gamma = 1;
  std::string beta = "1";
  std::string u = "0";
};

// Invalid deformation parameter; names the option and, for parse errors, the offset inside it.
class ParameterError : public Error {
 public:
  ParameterError(const std::string& parameter, const std::string& message)
      : Error("invalid --" + parameter + ": " + message), parameter_(parameter) {}
  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

struct DeformOutcome {
  AnalysisReport source;
  AnalysisReport deformed;
  ReportSection laws;    // transformation laws, nullity relations, I0 invariance
  ReportSection claims;  // stated values that are compared but not part of the law suite
  Json parameters = Json::object();

  int exit_code() const;
  Json to_json() const;
  std::string render_json() const;
  std::string render_text(int verbosity = 1) const;
};

// Throws ParameterError for unparsable or inadmissible parameters, DefinitionError when the source does not load.
DeformOutcome run_deform(const ManifoldDefinition& def, const DeformRequest& request, const std::string& name = "");

// Verbosity from PARACOS_VERBOSITY (0, 1 or 2); 1 when unset or unreadable.
int verbosity_from_env();

}  // namespace paracos
