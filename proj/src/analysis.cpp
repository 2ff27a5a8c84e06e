#include "paracos/analysis.hpp"

#include <cstdlib>
#include <sstream>

#include "paracos/curvature.hpp"
#include "paracos/deformations.hpp"
#include "paracos/expression.hpp"
#include "paracos/h_classification.hpp"
#include "paracos/nullity.hpp"
#include "paracos/structure.hpp"

namespace paracos {

Json rational_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"float", q.get_d()}}; }

Json scalar_json(const ScalarField& f) {
  if (f.is_constant()) return rational_json(f.constant_value());
  return Json{{"expression", f.to_string()}};
}

namespace {

Json point_json(const std::vector<Rational>& p) {
  Json out = Json::array();
  for (const auto& q : p) out.push_back(to_string(q));
  return out;
}

Json checks_json(const Report& r) {
  Json out = Json::array();
  for (const auto& c : r) {
    Json j{{"name", c.name}, {"status", status_name(c.status)}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    out.push_back(j);
  }
  return out;
}

Json section_json(const ReportSection& s) {
  Json j{{"name", s.name}, {"ran", s.ran()}};
  if (!s.ran()) j["skip_reason"] = s.skip_reason;
  j["theorem_backed"] = s.theorem_backed;
  j["values"] = s.values;
  j["checks"] = checks_json(s.checks);
  return j;
}

// Runs body; precondition and pole errors turn into a skip, anything else into a failed entry.
template <class F>
void guarded(ReportSection& sec, F&& body) {
  auto skip = [&](const std::string& reason) {
    if (sec.checks.empty() && sec.values.empty()) {
      sec.skip_reason = reason;
    } else {
      sec.checks.push_back(skipped(sec.name + " (remaining)", reason));
    }
  };
  try {
    body();
  } catch (const PreconditionError& e) {
    skip(e.what());
  } catch (const PoleError& e) {
    skip(std::string("pole: ") + e.what());
  } catch (const std::exception& e) {
    sec.checks.push_back(check_flag(sec.name + " completed", false, e.what()));
  }
}

ReportSection section(const std::string& name, bool theorem_backed = true) {
  ReportSection s;
  s.name = name;
  s.theorem_backed = theorem_backed;
  return s;
}

ReportSection skipped_section(const std::string& name, const std::string& reason) {
  ReportSection s = section(name);
  s.skip_reason = reason;
  return s;
}

Json htype_json(const HType& t) {
  Json j{{"tag", htag_name(t.tag)}};
  if (t.lambda2) j["lambda2"] = rational_json(*t.lambda2);
  j["det"] = rational_json(t.det);
  j["trace"] = rational_json(t.trace);
  j["point"] = point_json(t.point);
  return j;
}

Json frame_json(const AdaptedFrame& f) {
  Json j{{"kind", f.kind == FrameKind::OrthonormalPhi ? "orthonormal" : "pseudo-orthonormal"}, {"exact", f.exact}};
  j["eps"] = f.eps;
  if (f.exact_lambda) {
    j["lambda"] = rational_json(*f.exact_lambda);
  } else if (f.tag == HTag::H1 || f.tag == HTag::H3) {
    j["lambda"] = Json{{"float", f.lambda}};
  }
  if (f.tag == HTag::H2) {
    j["phi_sign"] = f.phi_sign;
    j["h_sign"] = f.h_sign;
  }
  Json vectors = Json::array();
  if (f.exact_vectors) {
    for (const auto& v : *f.exact_vectors) vectors.push_back(point_json(v));
  } else {
    for (const auto& v : f.vectors) vectors.push_back(v);
  }
  j["vectors"] = vectors;
  return j;
}

Json coefficients_json(const FrameDerivativeTable& t) {
  Json j = Json::object();
  if (t.exact) {
    for (const auto& [k, v] : t.exact_coefficients) j[k] = rational_json(v);
  } else {
    for (const auto& [k, v] : t.coefficients) j[k] = Json{{"float", v}};
  }
  return j;
}

struct Pipeline {
  AlmostParacontactStructure s;
  StructureAnalysis an;
  std::optional<CurvatureReport> cr;
  std::optional<NullityFit> fit;
  AnalysisReport report;
};

void structure_sections(Pipeline& p) {
  auto& s = p.s;
  auto& rep = p.report;
  ReportSection st = section("structure", false);
  st.values["dim"] = s.dim();
  st.values["coords"] = s.ctx->coords();
  Json gens = Json::array();
  for (const auto& g : s.ctx->generators()) {
    gens.push_back(Json{{"name", g.name}, {"coord", s.ctx->coord_name(g.coord)}, {"rate", to_string(g.rate)}});
  }
  st.values["generators"] = gens;
  st.values["point"] = point_json(s.base_point);
  if (s.declared_alpha) st.values["declared_alpha"] = scalar_json(*s.declared_alpha);
  rep.sections.push_back(st);

  ReportSection ax = section("axioms", false);
  try {
    p.an = analyze_structure(s);
    ax.checks = p.an.axioms;
  } catch (const std::exception& e) {
    ax.checks = verify_axioms(s);
    ax.checks.push_back(check_flag("structure analysis completed", false, e.what()));
    p.an.axioms_ok = false;
  }
  rep.axioms_ok = p.an.axioms_ok && report_ok(ax.checks);
  rep.sections.push_back(ax);
  if (!rep.axioms_ok) {
    for (const char* n : {"alpha", "tensors", "identities", "curvature", "nullity", "nullity_identities",
                          "h_classification", "frame_tables", "harmonicity"}) {
      rep.sections.push_back(skipped_section(n, "axioms fail"));
    }
    return;
  }

  const auto& a = p.an.alpha;
  rep.is_apc = a.is_apc;
  ReportSection al = section("alpha", a.is_apc);
  al.checks = a.checks;
  al.values["closed_eta"] = a.closed_eta;
  al.values["is_apc"] = a.is_apc;
  if (a.alpha) al.values["alpha"] = scalar_json(*a.alpha);
  al.values["alpha_constant"] = a.alpha_constant;
  if (a.f) al.values["f"] = scalar_json(*a.f);
  if (!a.reason.empty()) al.values["reason"] = a.reason;
  rep.sections.push_back(al);

  ReportSection te = section("tensors");
  te.values["h_zero"] = p.an.h.is_zero();
  te.values["h2_zero"] = p.an.h2.is_zero();
  te.values["trace_h2"] = scalar_json(trace(p.an.h2));
  te.values["normal"] = p.an.is_normal;
  if (a.is_apc) {
    te.values["parakaehler_leaves"] = p.an.parakaehler_leaves;
    if (p.an.leaves) {
      te.values["leaves_umbilical"] = p.an.leaves->umbilical;
      te.values["leaves_geodesic"] = p.an.leaves->geodesic;
    }
  }
  rep.sections.push_back(te);
}

void apc_sections(Pipeline& p) {
  auto& s = p.s;
  auto& an = p.an;
  auto& rep = p.report;

  ReportSection id = section("identities");
  id.checks = an.identities;
  rep.sections.push_back(id);

  ReportSection cu = section("curvature");
  guarded(cu, [&] {
    p.cr = analyze_curvature(s, an);
    cu.checks = p.cr->checks;
    cu.values["S(xi,xi)"] = scalar_json(p.cr->data.s_xi_xi);
    cu.values["scalar_curvature"] = scalar_json(an.geo.scalar);
    if (p.cr->constant_curvature && p.cr->constant_curvature->c) {
      cu.values["constant_sectional_curvature"] = scalar_json(*p.cr->constant_curvature->c);
    }
    if (p.cr->laplacian && p.cr->laplacian->applicable) {
      double worst = 0;
      for (const auto& smp : p.cr->laplacian->samples) worst = std::max(worst, smp.max_difference);
      cu.values["laplacian_samples"] = p.cr->laplacian->samples.size();
      cu.values["laplacian_max_difference"] = worst;
    }
  });
  rep.sections.push_back(cu);
  if (!p.cr) {
    for (const char* n : {"nullity", "nullity_identities", "h_classification", "frame_tables", "harmonicity"}) {
      rep.sections.push_back(skipped_section(n, "curvature data unavailable"));
    }
    return;
  }
  const auto& cd = p.cr->data;

  ReportSection nu = section("nullity", false);
  guarded(nu, [&] {
    p.fit = nullity_fit(s, an, cd);
    const auto& f = *p.fit;
    nu.values["status"] = nullity_status_name(f.status);
    if (f.kappa) nu.values["kappa"] = scalar_json(*f.kappa);
    if (f.mu) nu.values["mu"] = scalar_json(*f.mu);
    if (f.nu) nu.values["nu"] = scalar_json(*f.nu);
    nu.values["unique"] = f.unique;
    if (!f.witness.empty()) nu.values["witness"] = f.witness;
    nu.checks = f.checks;
  });
  rep.sections.push_back(nu);

  ReportSection ni = section("nullity_identities");
  if (!p.fit) {
    ni.skip_reason = "no nullity fit";
  } else if (p.fit->status == NullityStatus::NotNullity) {
    ni.skip_reason = "not a (kappa,mu,nu)-space";
  } else {
    guarded(ni, [&] {
      ni.checks.push_back(check_parakaehler_consequence(an, *p.fit));
      append(ni.checks, check_irem_suite(s, an, cd, *p.fit));
    });
  }
  rep.sections.push_back(ni);

  if (s.dim() != 3) {
    rep.sections.push_back(skipped_section("h_classification", "dimension 3 only"));
    rep.sections.push_back(skipped_section("frame_tables", "dimension 3 only"));
  } else {
    ReportSection hc = section("h_classification");
    std::optional<AdaptedFrame> frame;
    guarded(hc, [&] {
      HType t = classify_h(s, an, s.base_point);
      hc.values["type"] = htype_json(t);
      auto grid = classify_h_grid(s, an);
      Json tags = Json::array();
      for (const auto& smp : grid.samples) tags.push_back(Json{{"point", point_json(smp.point)}, {"tag", htag_name(smp.tag)}});
      hc.values["grid"] = tags;
      hc.values["grid_warnings"] = grid.warnings;
      frame = build_adapted_frame(s, an, t);
      hc.values["frame"] = frame_json(*frame);
      hc.checks = frame->checks;
    });
    rep.sections.push_back(hc);

    ReportSection ft = section("frame_tables");
    if (!frame) {
      ft.skip_reason = "no adapted frame at the point";
    } else if (!an.alpha.alpha_constant) {
      ft.skip_reason = "requires constant alpha";
    } else {
      guarded(ft, [&] {
        auto table = verify_frame_tables(s, an, cd, *frame);
        ft.values["exact"] = table.exact;
        ft.values["coefficients"] = coefficients_json(table);
        ft.checks = table.checks;
        ft.checks.push_back(verify_ricci_formula(s, an, *frame));
      });
    }
    rep.sections.push_back(ft);
  }

  ReportSection ha = section("harmonicity");
  guarded(ha, [&] {
    ha.values["harmonic"] = p.cr->harmonic;
    if (s.dim() == 3 && p.fit) {
      auto hn = harmonic_nullity_equivalence(s, an, cd, *p.fit);
      ha.values["nullity"] = hn.nullity;
      if (!hn.case_values.empty()) {
        Json cv = Json::object();
        for (const auto& [k, v] : hn.case_values) cv[k] = v;
        ha.values["case_values"] = cv;
      }
      ha.checks = hn.checks;
    }
  });
  rep.sections.push_back(ha);
}

Pipeline run_pipeline(AlmostParacontactStructure s, const std::string& name) {
  Pipeline p{std::move(s), {}, {}, {}, {}};
  p.report.name = name.empty() ? p.s.name : name;
  p.report.loaded = true;
  p.report.dim = p.s.dim();
  p.report.point = p.s.base_point;
  structure_sections(p);
  if (!p.report.axioms_ok) return p;
  if (!p.report.is_apc) {
    for (const char* n : {"identities", "curvature", "nullity", "nullity_identities", "h_classification",
                          "frame_tables", "harmonicity"}) {
      p.report.sections.push_back(skipped_section(n, "not an almost alpha-paracosymplectic structure"));
    }
    return p;
  }
  apc_sections(p);
  return p;
}

std::string text_value(const Json& v) {
  if (v.is_object()) {
    if (v.contains("exact") && v["exact"].is_string()) return v["exact"].get<std::string>();
    if (v.contains("expression")) return v["expression"].get<std::string>();
    if (v.contains("float") && v.size() == 1) {
      std::ostringstream out;
      out << v["float"].get<double>();
      return out.str();
    }
    if (v.contains("tag")) {
      std::string t = v["tag"].get<std::string>();
      if (v.contains("lambda2")) t += ", lambda^2 = " + v["lambda2"]["exact"].get<std::string>();
      return t;
    }
    return "{...}";
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    if (v.size() > 6) return "[" + std::to_string(v.size()) + " items]";
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + text_value(v[i]);
    return out + "]";
  }
  return v.dump();
}

void render_section(std::ostringstream& out, const ReportSection& s, int verbosity) {
  int pass = 0, fail = 0, skip = 0;
  for (const auto& c : s.checks) {
    if (c.status == CheckStatus::Pass) ++pass;
    if (c.status == CheckStatus::Fail) ++fail;
    if (c.status == CheckStatus::Skipped) ++skip;
  }
  out << "[" << s.name << "] ";
  if (!s.ran()) {
    out << "skipped: " << s.skip_reason << "\n";
    return;
  }
  if (!s.checks.empty()) out << pass << " pass, " << fail << " fail, " << skip << " skipped";
  if (!s.theorem_backed && fail) out << " (findings)";
  out << "\n";
  for (const auto& [k, v] : s.values.items()) {
    if (verbosity < 2 && (k == "grid" || k == "frame" || k == "coefficients" || k == "coords")) continue;
    out << "    " << k << " = " << text_value(v) << "\n";
  }
  for (const auto& c : s.checks) {
    bool show = verbosity >= 2 || c.status == CheckStatus::Fail;
    if (!show) continue;
    out << "    " << status_name(c.status) << "  " << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
}

Json report_core_json(const AnalysisReport& r) {
  Json j{{"name", r.name}, {"dim", r.dim}, {"point", point_json(r.point)}, {"loaded", r.loaded}};
  if (!r.load_error.empty()) j["load_error"] = r.load_error;
  j["axioms_ok"] = r.axioms_ok;
  j["is_apc"] = r.is_apc;
  j["exit_code"] = r.exit_code();
  Json secs = Json::array();
  for (const auto& s : r.sections) secs.push_back(section_json(s));
  j["sections"] = secs;
  return j;
}

const char* exit_meaning(int code) {
  switch (code) {
    case ExitOk: return "all applicable checks pass";
    case ExitStructural: return "not an almost alpha-paracosymplectic structure";
    case ExitIdentityFailed: return "a theorem-backed identity failed";
    case ExitParse: return "input could not be parsed";
  }
  return "";
}

}  // namespace

const ReportSection* AnalysisReport::section(const std::string& n) const {
  for (const auto& s : sections) {
    if (s.name == n) return &s;
  }
  return nullptr;
}

const CheckResult* AnalysisReport::first_failure() const {
  for (const auto& s : sections) {
    if (!s.theorem_backed) continue;
    for (const auto& c : s.checks) {
      if (c.status == CheckStatus::Fail) return &c;
    }
  }
  return nullptr;
}

int AnalysisReport::exit_code() const {
  if (!loaded) return ExitParse;
  if (!axioms_ok || !is_apc) return ExitStructural;
  if (first_failure()) return ExitIdentityFailed;
  return ExitOk;
}

Json AnalysisReport::to_json() const { return report_core_json(*this); }

std::string AnalysisReport::render_json() const { return to_json().dump(2) + "\n"; }

std::string AnalysisReport::render_text(int verbosity) const {
  std::ostringstream out;
  out << name << " (dim " << dim << ") at " << text_value(point_json(point)) << "\n";
  if (!loaded) out << "  load error: " << load_error << "\n";
  if (verbosity >= 1) {
    for (const auto& s : sections) {
      out << "  ";
      render_section(out, s, verbosity);
    }
  } else {
    if (auto* a = section("alpha"); a && a->values.contains("alpha")) out << "  alpha = " << text_value(a->values["alpha"]) << "\n";
    if (auto* n = section("nullity"); n && n->ran()) out << "  nullity = " << text_value(n->values["status"]) << "\n";
    if (auto* h = section("harmonicity"); h && h->ran()) out << "  harmonic = " << text_value(h->values["harmonic"]) << "\n";
  }
  if (auto* f = first_failure()) out << "first failure: " << f->name << " (" << f->detail << ")\n";
  out << "result: " << exit_meaning(exit_code()) << " (exit " << exit_code() << ")\n";
  return out.str();
}

AnalysisReport run_analyze(const ManifoldDefinition& def, const AnalyzeOptions& options, const std::string& name) {
  AlmostParacontactStructure s;
  try {
    s = AlmostParacontactStructure::from_definition(def, name);
    if (options.point) {
      if (static_cast<int>(options.point->size()) != s.dim()) {
        throw DefinitionError("point has " + std::to_string(options.point->size()) + " coordinates, expected " +
                              std::to_string(s.dim()));
      }
      s.base_point = *options.point;
    }
  } catch (const std::exception& e) {
    AnalysisReport r;
    r.name = name;
    r.dim = def.dim;
    r.point = options.point.value_or(def.base_point);
    r.load_error = e.what();
    return r;
  }
  return run_pipeline(std::move(s), name).report;
}

int DeformOutcome::exit_code() const {
  int worst = ExitOk;
  for (int c : {source.exit_code(), deformed.exit_code()}) worst = std::max(worst, c);
  if (worst == ExitOk && !report_ok(laws.checks)) worst = ExitIdentityFailed;
  return worst;
}

Json DeformOutcome::to_json() const {
  return Json{{"parameters", parameters},     {"source", source.to_json()},  {"deformed", deformed.to_json()},
              {"laws", section_json(laws)},   {"claims", section_json(claims)}, {"exit_code", exit_code()}};
}

std::string DeformOutcome::render_json() const { return to_json().dump(2) + "\n"; }

std::string DeformOutcome::render_text(int verbosity) const {
  std::ostringstream out;
  out << "deformation\n";
  for (const auto& [k, v] : parameters.items()) out << "  " << k << " = " << text_value(v) << "\n";
  out << "source: " << source.render_text(verbosity >= 2 ? verbosity : 0);
  out << "deformed: " << deformed.render_text(verbosity >= 2 ? verbosity : 0);
  out << "  ";
  render_section(out, laws, std::max(verbosity, 2));
  out << "  ";
  render_section(out, claims, std::max(verbosity, 2));
  out << "result: " << exit_meaning(exit_code()) << " (exit " << exit_code() << ")\n";
  return out.str();
}

namespace {

ScalarField parse_parameter(const std::string& option, const std::string& text, const ContextPtr& ctx) {
  try {
    return parse_scalar(text, ctx);
  } catch (const Error& e) {
    throw ParameterError(option, e.what());
  }
}

void relation_checks(ReportSection& laws, const Pipeline& src, const Pipeline& dst, const ScalarField& beta) {
  const auto& f = *src.fit;
  const auto& g = *dst.fit;
  if (f.status == NullityStatus::NotNullity || g.status == NullityStatus::NotNullity) {
    laws.checks.push_back(check_flag("deformed structure is a (kappa,mu,nu)-space iff the source is",
                                     (f.status == NullityStatus::NotNullity) == (g.status == NullityStatus::NotNullity),
                                     std::string("source ") + nullity_status_name(f.status) + ", deformed " +
                                         nullity_status_name(g.status)));
    return;
  }
  const auto& ctx = src.s.ctx;
  NullityParameters p{*f.kappa, f.mu.value_or(ScalarField(ctx)), f.nu.value_or(ScalarField(ctx))};
  ScalarField dbx = dbeta_along(src.s, beta);
  NullityParameters q = transform_kmn(p, src.an.alpha_field(), beta, dbx);
  const auto& tctx = dst.s.ctx;
  laws.values["predicted_kappa"] = scalar_json(q.kappa);
  laws.checks.push_back(
      check_zero("kappa~ = kappa / beta^2 + alpha dbeta(xi) / beta^3", q.kappa.in_context(tctx) - *g.kappa));
  if (f.mu && g.mu) {
    laws.values["predicted_mu"] = scalar_json(q.mu);
    laws.values["predicted_nu"] = scalar_json(q.nu);
    if (f.unique && g.unique) {
      laws.checks.push_back(check_zero("mu~ = mu / beta", q.mu.in_context(tctx) - *g.mu));
      laws.checks.push_back(check_zero("nu~ = nu / beta + dbeta(xi) / beta^2", q.nu.in_context(tctx) - *g.nu));
    } else {
      TensorField predicted = compose(dst.s.phi, dst.s.phi) * q.kappa.in_context(tctx) +
                              dst.an.h * q.mu.in_context(tctx) + dst.an.phi_h * q.nu.in_context(tctx);
      laws.checks.push_back(check_zero("B~ = kappa~ phi^2 + mu~ h~ + nu~ phi h~", predicted - g.B));
    }
    if (!f.mu->is_zero() && !g.mu->is_zero() && f.unique && g.unique) {
      ScalarField i0 = invariant_I0(p, src.an.alpha_field());
      ScalarField i1 = invariant_I0({*g.kappa, *g.mu, *g.nu}, dst.an.alpha_field());
      laws.values["I0"] = scalar_json(i0);
      laws.checks.push_back(check_zero("I0 = (kappa - alpha nu) / mu^2 is invariant", i0.in_context(tctx) - i1));
    } else {
      laws.checks.push_back(skipped("I0 = (kappa - alpha nu) / mu^2 is invariant", "requires mu != 0 and a unique fit"));
    }
  }
}

}  // namespace

DeformOutcome run_deform(const ManifoldDefinition& def, const DeformRequest& request, const std::string& name) {
  auto s = AlmostParacontactStructure::from_definition(def, name);
  DeformOutcome out;
  out.laws = section("deformation_laws");
  out.claims = section("stated_claims", false);
  AlmostParacontactStructure t;
  ScalarField beta;
  if (request.kind == DeformKind::Homothetic) {
    out.parameters["kind"] = "D-homothetic";
    if (request.gamma <= 0) throw ParameterError("gamma", "gamma must be positive, got " + to_string(request.gamma));
    beta = parse_parameter("beta", request.beta, s.ctx);
    out.parameters["gamma"] = rational_json(request.gamma);
    out.parameters["beta"] = scalar_json(beta);
    try {
      t = d_homothetic_deform(s, request.gamma, beta);
    } catch (const PreconditionError& e) {
      throw ParameterError("beta", e.what());
    }
  } else {
    out.parameters["kind"] = "conformal";
    ScalarField u = parse_parameter("conformal-u", request.u, s.ctx);
    out.parameters["u"] = scalar_json(u);
    try {
      t = conformal_deform(s, u);
    } catch (const PreconditionError& e) {
      throw ParameterError("conformal-u", e.what());
    }
  }
  const std::string base = name.empty() ? s.name : name;
  Pipeline src = run_pipeline(s, base);
  Pipeline dst = run_pipeline(t, base + "~");
  out.source = src.report;
  out.deformed = dst.report;
  if (!src.report.is_apc || !src.report.axioms_ok) {
    out.laws.skip_reason = "source is not an almost alpha-paracosymplectic structure";
    out.claims.skip_reason = out.laws.skip_reason;
    return out;
  }
  out.laws.checks.push_back(check_flag("deformed structure satisfies the axioms", dst.report.axioms_ok));
  out.laws.checks.push_back(check_flag("deformed structure is almost alpha-paracosymplectic", dst.report.is_apc));
  if (!dst.report.is_apc || !dst.report.axioms_ok) return out;
  out.laws.values["alpha"] = scalar_json(src.an.alpha_field());
  out.laws.values["alpha~"] = scalar_json(dst.an.alpha_field());
  guarded(out.laws, [&] {
    if (request.kind == DeformKind::Conformal) {
      out.laws.checks.push_back(check_zero("alpha' = 0", dst.an.alpha_field()));
      return;
    }
    append(out.laws.checks, verify_deformation_laws(s, src.an, t, dst.an, request.gamma, beta));
    if (src.fit && dst.fit) {
      relation_checks(out.laws, src, dst, beta);
    } else {
      out.laws.checks.push_back(skipped("nullity relations", "nullity fit unavailable"));
    }
  });
  if (request.kind == DeformKind::Homothetic) {
    guarded(out.claims, [&] { out.claims.checks.push_back(check_alpha_gamma_over_beta(dst.an, request.gamma, beta)); });
  } else {
    out.claims.skip_reason = "no stated values for the conformal deformation";
  }
  return out;
}

int verbosity_from_env() {
  const char* v = std::getenv("PARACOS_VERBOSITY");
  if (!v) return 1;
  std::string s(v);
  if (s == "0" || s == "1" || s == "2") return s[0] - '0';
  return 1;
}

}  // namespace paracos
