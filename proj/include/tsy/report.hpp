#pragma once

// The verification pipeline and its report: validate, extract (alpha, beta),
// curvature, soliton, identity suite, theorem suite, d eta.

#include <tsy/contact.hpp>
#include <tsy/curvature.hpp>
#include <tsy/soliton.hpp>
#include <tsy/spec_file.hpp>
#include <tsy/theorems.hpp>
#include <tsy/verdict.hpp>

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tsy {

struct VerifyOptions {
  std::optional<std::pair<Rational, Rational>> quasi_conformal;
  std::optional<PotentialFieldSpec> potential_field;
};

struct AxiomRecord {
  std::string id;
  std::string statement;
  bool passed = true;
  std::vector<ResidualRow> failures;

  bool operator==(const AxiomRecord&) const = default;
};

struct SolitonRecord {
  std::string field;  // frame components of V
  std::string status;
  std::optional<std::string> lambda, mu, r, classification;
  std::optional<std::string> relation;  // family case
  std::vector<ResidualRow> residuals;

  bool operator==(const SolitonRecord&) const = default;
};

struct VerificationReport {
  std::string name;
  std::vector<std::string> coordinates;
  std::string quasi_conformal_a = "1", quasi_conformal_b = "1";
  std::vector<std::string> notes;

  bool structure_valid = false;
  std::vector<AxiomRecord> axioms;

  std::string extraction_status;
  std::optional<std::string> alpha, beta;
  std::vector<ResidualRow> extraction_residuals;

  std::vector<std::string> brackets;    // nonzero [e_i, e_j], i < j
  std::vector<std::string> connection;  // nonzero nabla_{e_i} e_j
  std::vector<std::string> riemann;     // nonzero R(e_i, e_j) e_k, i < j
  std::vector<std::vector<std::string>> ricci;
  std::string scalar_curvature;

  std::vector<SolitonRecord> solitons;  // V = xi first, then the potential field
  std::vector<ResidualRow> identities;
  std::vector<TheoremVerdict> verdicts;

  std::vector<std::vector<std::string>> d_eta;
  bool d_eta_zero = false;

  std::vector<std::string> findings;
  int exit_code = 0;

  bool operator==(const VerificationReport&) const = default;
};

// Frame-vector text such as "-e1" or "z*e1 + 2*e3".
inline std::string format_frame_vector(const FrameVector& v, const Chart& chart) {
  std::string out;
  for (std::size_t k = 0; k < v.dim(); ++k) {
    if (v(k).is_zero()) continue;
    const std::string e = "e" + std::to_string(k + 1);
    std::string term;
    bool negative = false;
    if (const auto c = v(k).constant_value()) {
      negative = *c < 0;
      const Rational a = negative ? Rational(-*c) : *c;
      term = a == 1 ? e : a.get_str() + "*" + e;
    } else {
      const std::string t = to_string(v(k), chart);
      const bool bare = t.find_first_of(" -/") == std::string::npos;
      term = (bare ? t : "(" + t + ")") + "*" + e;
    }
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

namespace detail {

inline SolitonRecord soliton_record(const SolitonResult& s, const FrameVector& v, const Chart& chart) {
  SolitonRecord r;
  r.field = format_frame_vector(v, chart);
  r.status = to_string(s.status);
  if (s.solution) {
    r.lambda = s.solution->lambda.get_str();
    r.mu = s.solution->mu.get_str();
    r.r = s.solution->r.get_str();
    r.classification = to_string(s.solution->classification);
  } else if (s.lambda_expr && s.mu_expr) {
    r.lambda = to_string(*s.lambda_expr, chart);
    r.mu = to_string(*s.mu_expr, chart);
  }
  if (s.relation)
    r.relation = "(" + to_string(s.relation->a, chart) + ")*lambda + (" + to_string(s.relation->b, chart) +
                 ")*mu = " + to_string(s.relation->c, chart);
  r.residuals = s.residuals;
  return r;
}

inline std::vector<std::vector<std::string>> matrix_strings(const Tensor02& t, const Chart& chart) {
  std::vector<std::vector<std::string>> out(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) out[i].push_back(to_string(t(i, j), chart));
  return out;
}

}  // namespace detail

inline VerificationReport verify(const ManifoldSpecFile& spec, const VerifyOptions& opts = {}) {
  VerificationReport rep;
  rep.name = spec.name;
  rep.coordinates = spec.coordinates;
  const LoadedManifold lm = instantiate(spec);
  const FrameManifold& m = *lm.manifold;
  const ContactStructure& c = lm.contact;
  const Chart& chart = m.chart();
  const std::size_t n = m.dim();
  rep.notes = lm.notes;

  Rational a = 1, b = 1;
  if (opts.quasi_conformal)
    std::tie(a, b) = *opts.quasi_conformal;
  else if (spec.quasi_conformal)
    std::tie(a, b) = parse_quasi_conformal(spec.quasi_conformal->first, spec.quasi_conformal->second);
  rep.quasi_conformal_a = a.get_str();
  rep.quasi_conformal_b = b.get_str();

  std::optional<FrameVector> field;
  if (opts.potential_field)
    field = resolve_potential_field(*opts.potential_field, m, c, "--potential-field");
  else if (spec.potential_field)
    field = resolve_potential_field(*spec.potential_field, m, c);

  const AlmostContactReport acr = validate_almost_contact(m, c);
  rep.structure_valid = acr.passed();
  for (const auto& ax : acr.axioms) rep.axioms.push_back({ax.id, ax.statement, ax.passed, ax.failures});

  std::optional<TransSasakianType> type;
  if (rep.structure_valid) {
    const ExtractionResult ex = extract_trans_sasakian(m, c);
    rep.extraction_status = to_string(ex.status);
    rep.extraction_residuals = ex.residuals;
    type = ex.type;
    if (type) {
      rep.alpha = to_string(type->alpha, chart);
      rep.beta = to_string(type->beta, chart);
    }
  } else {
    rep.extraction_status = "skipped";
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const FrameVector br = m.bracket_of_basis(i, j);
      if (!br.is_zero())
        rep.brackets.push_back("[e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                               "] = " + format_frame_vector(br, chart));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const FrameVector d = m.covariant_derivative(m.basis(i), m.basis(j));
      if (!d.is_zero())
        rep.connection.push_back("nabla_e" + std::to_string(i + 1) + " e" + std::to_string(j + 1) + " = " +
                                 format_frame_vector(d, chart));
    }

  const Curvature curv = compute_curvature(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const FrameVector v = apply(curv.riemann, m.basis(i), m.basis(j), m.basis(k));
        if (!v.is_zero())
          rep.riemann.push_back("R(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")e" +
                                std::to_string(k + 1) + " = " + format_frame_vector(v, chart));
      }
  rep.ricci = detail::matrix_strings(curv.ricci, chart);
  rep.scalar_curvature = to_string(curv.scalar, chart);

  const SolitonResult reeb = solve_eta_yamabe(m, c, curv, c.xi);
  rep.solitons.push_back(detail::soliton_record(reeb, c.xi, chart));
  std::optional<SolitonResult> field_soliton;
  if (field) {
    field_soliton = solve_eta_yamabe(m, c, curv, *field);
    rep.solitons.push_back(detail::soliton_record(*field_soliton, *field, chart));
  }

  if (type) rep.identities = verify_structure_identities(m, c, *type, curv);

  SuiteInput si{&m, &c, &curv, type, reeb.solution, a, b};
  rep.verdicts = run_suite(si);
  for (auto& v : soliton_verdicts({&m, &c, &curv, type, reeb, field_soliton, field})) rep.verdicts.push_back(std::move(v));

  const Tensor02 deta = exterior_derivative(m, c.eta);
  rep.d_eta = detail::matrix_strings(deta, chart);
  rep.d_eta_zero = deta.is_zero();

  if (!rep.structure_valid) rep.findings.push_back("structure: not an almost contact metric structure");
  if (type && rep.d_eta_zero)
    rep.findings.push_back("d eta = 0 on this fixture: arguments that divide by d eta(X, Y) give no constraint here");
  bool failed = false;
  for (const auto& row : rep.identities)
    if (row.applicable && !row.passed) {
      failed = true;
      rep.findings.push_back("identity failed: " + row.identity + " at " + row.instantiation);
    }
  for (const auto& v : rep.verdicts)
    if (v.applicable && !v.consistent) {
      failed = true;
      rep.findings.push_back("inconsistent verdict: " + v.id);
    }
  rep.exit_code = failed ? 1 : 0;
  return rep;
}

// ---------------------------------------------------------------------------
// JSON form. Keys keep insertion order; dump(2) is the canonical output.

using Json = nlohmann::ordered_json;

inline void to_json(Json& j, const ResidualRow& r) {
  j = Json{{"identity", r.identity},     {"instantiation", r.instantiation}, {"residual", r.residual},
           {"passed", r.passed},         {"applicable", r.applicable},       {"note", r.note}};
}
inline void from_json(const Json& j, ResidualRow& r) {
  j.at("identity").get_to(r.identity);
  j.at("instantiation").get_to(r.instantiation);
  j.at("residual").get_to(r.residual);
  j.at("passed").get_to(r.passed);
  j.at("applicable").get_to(r.applicable);
  j.at("note").get_to(r.note);
}

inline void to_json(Json& j, const TheoremVerdict& v) {
  j = Json{{"id", v.id},
           {"statement", v.statement},
           {"kind", to_string(v.kind)},
           {"applicable", v.applicable},
           {"lhs", v.lhs_holds},
           {"rhs", v.rhs_holds},
           {"consistent", v.consistent},
           {"witnesses", v.witnesses},
           {"note", v.note}};
}
inline void from_json(const Json& j, TheoremVerdict& v) {
  j.at("id").get_to(v.id);
  j.at("statement").get_to(v.statement);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unconditional")
    v.kind = VerdictKind::unconditional;
  else if (kind == "biconditional")
    v.kind = VerdictKind::biconditional;
  else if (kind == "implication")
    v.kind = VerdictKind::implication;
  else
    throw std::invalid_argument("unknown verdict kind '" + kind + "'");
  j.at("applicable").get_to(v.applicable);
  j.at("lhs").get_to(v.lhs_holds);
  j.at("rhs").get_to(v.rhs_holds);
  j.at("consistent").get_to(v.consistent);
  j.at("witnesses").get_to(v.witnesses);
  j.at("note").get_to(v.note);
}

inline void to_json(Json& j, const AxiomRecord& a) {
  j = Json{{"id", a.id}, {"statement", a.statement}, {"passed", a.passed}, {"failures", a.failures}};
}
inline void from_json(const Json& j, AxiomRecord& a) {
  j.at("id").get_to(a.id);
  j.at("statement").get_to(a.statement);
  j.at("passed").get_to(a.passed);
  j.at("failures").get_to(a.failures);
}

namespace detail {

inline Json optional_json(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }
inline std::optional<std::string> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

}  // namespace detail

inline void to_json(Json& j, const SolitonRecord& s) {
  j = Json{{"field", s.field},
           {"status", s.status},
           {"lambda", detail::optional_json(s.lambda)},
           {"mu", detail::optional_json(s.mu)},
           {"r", detail::optional_json(s.r)},
           {"classification", detail::optional_json(s.classification)},
           {"relation", detail::optional_json(s.relation)},
           {"residuals", s.residuals}};
}
inline void from_json(const Json& j, SolitonRecord& s) {
  j.at("field").get_to(s.field);
  j.at("status").get_to(s.status);
  s.lambda = detail::optional_from(j.at("lambda"));
  s.mu = detail::optional_from(j.at("mu"));
  s.r = detail::optional_from(j.at("r"));
  s.classification = detail::optional_from(j.at("classification"));
  s.relation = detail::optional_from(j.at("relation"));
  j.at("residuals").get_to(s.residuals);
}

inline Json report_to_json(const VerificationReport& r) {
  Json j;
  j["name"] = r.name;
  j["coordinates"] = r.coordinates;
  j["quasi_conformal"] = {r.quasi_conformal_a, r.quasi_conformal_b};
  j["notes"] = r.notes;
  j["structure"] = Json{{"valid", r.structure_valid}, {"axioms", r.axioms}};
  j["extraction"] = Json{{"status", r.extraction_status},
                         {"alpha", detail::optional_json(r.alpha)},
                         {"beta", detail::optional_json(r.beta)},
                         {"residuals", r.extraction_residuals}};
  j["brackets"] = r.brackets;
  j["connection"] = r.connection;
  j["curvature"] = Json{{"riemann", r.riemann}, {"ricci", r.ricci}, {"scalar", r.scalar_curvature}};
  j["solitons"] = r.solitons;
  j["identities"] = r.identities;
  j["verdicts"] = r.verdicts;
  j["d_eta"] = Json{{"components", r.d_eta}, {"zero", r.d_eta_zero}};
  j["findings"] = r.findings;
  j["exit_code"] = r.exit_code;
  return j;
}

inline VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  j.at("name").get_to(r.name);
  j.at("coordinates").get_to(r.coordinates);
  r.quasi_conformal_a = j.at("quasi_conformal").at(0).get<std::string>();
  r.quasi_conformal_b = j.at("quasi_conformal").at(1).get<std::string>();
  j.at("notes").get_to(r.notes);
  j.at("structure").at("valid").get_to(r.structure_valid);
  j.at("structure").at("axioms").get_to(r.axioms);
  const Json& ex = j.at("extraction");
  ex.at("status").get_to(r.extraction_status);
  r.alpha = detail::optional_from(ex.at("alpha"));
  r.beta = detail::optional_from(ex.at("beta"));
  ex.at("residuals").get_to(r.extraction_residuals);
  j.at("brackets").get_to(r.brackets);
  j.at("connection").get_to(r.connection);
  j.at("curvature").at("riemann").get_to(r.riemann);
  j.at("curvature").at("ricci").get_to(r.ricci);
  j.at("curvature").at("scalar").get_to(r.scalar_curvature);
  j.at("solitons").get_to(r.solitons);
  j.at("identities").get_to(r.identities);
  j.at("verdicts").get_to(r.verdicts);
  j.at("d_eta").at("components").get_to(r.d_eta);
  j.at("d_eta").at("zero").get_to(r.d_eta_zero);
  j.at("findings").get_to(r.findings);
  j.at("exit_code").get_to(r.exit_code);
  return r;
}

inline std::string report_json_text(const VerificationReport& r) { return report_to_json(r).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Text form.

inline std::string report_text(const VerificationReport& r) {
  std::ostringstream o;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  o << "manifold: " << (r.name.empty() ? "(unnamed)" : r.name) << "\n";
  for (const auto& n : r.notes) o << "note: " << n << "\n";

  o << "\nalmost contact metric structure: " << (r.structure_valid ? "valid" : "INVALID") << "\n";
  for (const auto& a : r.axioms) {
    o << "  " << (a.passed ? "ok   " : "FAIL ") << a.id << "  " << a.statement << "\n";
    for (const auto& f : a.failures) o << "         at " << f.instantiation << "\n";
  }

  o << "\ntrans-Sasakian type: " << r.extraction_status;
  if (r.alpha) o << "  alpha = " << *r.alpha << ", beta = " << *r.beta;
  o << "\n";
  for (const auto& f : r.extraction_residuals) o << "  residual at " << f.instantiation << "\n";

  o << "\nbrackets:\n";
  if (r.brackets.empty()) o << "  all zero\n";
  for (const auto& s : r.brackets) o << "  " << s << "\n";
  o << "connection:\n";
  if (r.connection.empty()) o << "  all zero\n";
  for (const auto& s : r.connection) o << "  " << s << "\n";
  o << "curvature:\n";
  if (r.riemann.empty()) o << "  R = 0\n";
  for (const auto& s : r.riemann) o << "  " << s << "\n";
  o << "  S = [";
  for (std::size_t i = 0; i < r.ricci.size(); ++i) {
    o << (i ? "; " : "");
    for (std::size_t j = 0; j < r.ricci[i].size(); ++j) o << (j ? ", " : "") << r.ricci[i][j];
  }
  o << "]\n  r = " << r.scalar_curvature << "\n";

  o << "\neta-Yamabe soliton:\n";
  for (const auto& s : r.solitons) {
    o << "  V = " << s.field << ": " << s.status;
    if (s.lambda) o << "  lambda = " << *s.lambda << ", mu = " << *s.mu;
    if (s.classification) o << "  (" << *s.classification << ")";
    if (s.relation) o << "  " << *s.relation;
    o << "\n";
  }

  o << "\nidentities:";
  if (r.identities.empty()) o << " not run";
  o << "\n";
  // One line per identity; failing instantiations listed below it.
  for (std::size_t i = 0; i < r.identities.size();) {
    std::size_t end = i;
    bool applicable = true, passed = true;
    std::string note;
    while (end < r.identities.size() && r.identities[end].identity == r.identities[i].identity) {
      applicable = applicable && r.identities[end].applicable;
      passed = passed && r.identities[end].passed;
      if (note.empty()) note = r.identities[end].note;
      ++end;
    }
    const char* mark = !applicable ? "skip " : passed ? "ok   " : "FAIL ";
    o << "  " << mark << r.identities[i].identity << "  (" << end - i << (end - i == 1 ? " row" : " rows") << ")";
    if (!note.empty()) o << "  " << note;
    o << "\n";
    for (std::size_t k = i; k < end; ++k)
      if (r.identities[k].applicable && !r.identities[k].passed) {
        o << "         at " << r.identities[k].instantiation << ":";
        for (const auto& c : r.identities[k].residual) o << " " << c;
        o << "\n";
      }
    i = end;
  }

  o << "\nverdicts (a, b) = (" << r.quasi_conformal_a << ", " << r.quasi_conformal_b << "):\n";
  for (const auto& v : r.verdicts) {
    if (!v.applicable) {
      o << "  n/a          " << v.id << "  (" << v.note << ")\n";
      continue;
    }
    o << "  " << (v.consistent ? "consistent   " : "INCONSISTENT ") << v.id << "  lhs=" << yes(v.lhs_holds);
    if (v.kind != VerdictKind::unconditional) o << " rhs=" << yes(v.rhs_holds);
    if (!v.note.empty()) o << "  (" << v.note << ")";
    o << "\n";
    if (!v.consistent)
      for (const auto& w : v.witnesses) o << "      " << w << "\n";
  }

  o << "\nd eta: " << (r.d_eta_zero ? "zero" : "nonzero") << "\n";
  o << "\nfindings:";
  if (r.findings.empty()) o << " none";
  o << "\n";
  for (const auto& f : r.findings) o << "  " << f << "\n";
  o << "\nexit code: " << r.exit_code << "\n";
  return o.str();
}

}  // namespace tsy
