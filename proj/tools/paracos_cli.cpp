#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "paracos/analysis.hpp"
#include "paracos/catalog.hpp"
#include "paracos/structure.hpp"

using namespace paracos;

namespace {

// A path, or the name of a built-in catalog entry when no such file exists.
std::pair<ManifoldDefinition, std::string> load_input(const std::string& input) {
  namespace fs = std::filesystem;
  if (!fs::exists(input)) {
    for (const auto& [name, source] : embedded_catalog_sources()) {
      if (name == input) return {load_definition(source), name};
    }
  }
  return {load_definition_file(input), fs::path(input).stem().string()};
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  return out;
}

int run_verify(const std::string& input) {
  auto [def, name] = load_input(input);
  auto s = AlmostParacontactStructure::from_definition(def, name);
  Report axioms = verify_axioms(s);
  int v = verbosity_from_env();
  auto show = [&](const Report& r) {
    for (const auto& c : r) {
      if (v < 2 && c.status == CheckStatus::Pass) continue;
      std::cout << "  " << status_name(c.status) << "  " << c.name;
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << "\n";
    }
  };
  std::cout << name << ": axioms " << (report_ok(axioms) ? "pass" : "fail") << "\n";
  show(axioms);
  if (!report_ok(axioms)) return ExitStructural;
  auto a = extract_alpha(s);
  std::cout << name << ": " << (a.is_apc ? "almost alpha-paracosymplectic" : "not almost alpha-paracosymplectic");
  if (a.alpha) std::cout << ", alpha = " << a.alpha->to_string() << (a.alpha_constant ? " (constant)" : "");
  if (!a.reason.empty()) std::cout << " (" << a.reason << ")";
  std::cout << "\n";
  show(a.checks);
  if (!a.is_apc) return ExitStructural;
  return report_ok(a.checks) ? ExitOk : ExitIdentityFailed;
}

int run_catalog(const std::string& emit) {
  if (!emit.empty()) {
    std::cout << catalog_entry(emit).source;
    return ExitOk;
  }
  for (const auto& e : catalog()) {
    std::cout << e.name << "  dim " << e.definition.dim;
    if (e.expected.failure != ExpectedFailure::None) {
      std::cout << "  control: " << expected_failure_name(e.expected.failure);
    } else if (e.expected.alpha) {
      std::cout << "  alpha = " << to_string(*e.expected.alpha);
    } else {
      std::cout << "  alpha varies";
    }
    std::cout << "  " << e.description << "\n";
  }
  return ExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of almost alpha-paracosymplectic structures"};
  app.require_subcommand(1);

  std::string input;
  auto* verify = app.add_subcommand("verify", "check the structure axioms and alpha");
  verify->add_option("file", input, "definition file or catalog entry name")->required();

  bool json = false;
  std::string point_text;
  auto* analyze = app.add_subcommand("analyze", "run the full analysis pipeline");
  analyze->add_option("file", input, "definition file or catalog entry name")->required();
  analyze->add_flag("--json", json, "machine-readable output");
  analyze->add_option("--point", point_text, "evaluation point, comma separated rationals");

  std::string gamma = "1", beta, conformal_u;
  auto* deform = app.add_subcommand("deform", "D-homothetic or conformal deformation");
  deform->add_option("file", input, "definition file or catalog entry name")->required();
  auto* gamma_opt = deform->add_option("--gamma", gamma, "positive rational");
  auto* beta_opt = deform->add_option("--beta", beta, "expression with d beta ^ eta = 0");
  auto* u_opt = deform->add_option("--conformal-u", conformal_u, "expression u with du = alpha eta");
  u_opt->excludes(beta_opt)->excludes(gamma_opt);
  deform->add_flag("--json", json, "machine-readable output");

  bool list = false;
  std::string emit;
  auto* cat = app.add_subcommand("catalog", "built-in example structures");
  auto* list_opt = cat->add_flag("--list", list, "list entries (default)");
  cat->add_option("--emit", emit, "print the definition of an entry")->excludes(list_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ExitParse;
  }

  const int verbosity = verbosity_from_env();
  try {
    if (*verify) return run_verify(input);
    if (*cat) return run_catalog(emit);
    if (*analyze) {
      auto [def, name] = load_input(input);
      AnalyzeOptions options;
      if (!point_text.empty()) options.point = parse_point(point_text);
      auto report = run_analyze(def, options, name);
      std::cout << (json ? report.render_json() : report.render_text(verbosity));
      return report.exit_code();
    }
    if (*deform) {
      auto [def, name] = load_input(input);
      DeformRequest request;
      if (!conformal_u.empty()) {
        request.kind = DeformKind::Conformal;
        request.u = conformal_u;
      } else {
        if (beta.empty()) throw ParameterError("beta", "either --beta or --conformal-u is required");
        try {
          request.gamma = parse_rational(gamma);
        } catch (const Error& e) {
          throw ParameterError("gamma", e.what());
        }
        request.beta = beta;
      }
      auto outcome = run_deform(def, request, name);
      std::cout << (json ? outcome.render_json() : outcome.render_text(verbosity));
      return outcome.exit_code();
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return ExitParse;
  } catch (const ParameterError& e) {
    std::cerr << e.what() << "\n";
    return ExitParse;
  } catch (const DefinitionError& e) {
    std::cerr << "definition error: " << e.what() << "\n";
    return ExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitIdentityFailed;
  }
  return ExitOk;
}
