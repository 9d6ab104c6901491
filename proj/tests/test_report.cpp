#include <tsy/report.hpp>

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <string>

using namespace tsy;

namespace {

ManifoldSpecFile example_spec() { return *builtin_spec("paper-example"); }

std::string error_path(const std::string& text) {
  try {
    instantiate(parse_spec_text(text));
  } catch (const SpecError& e) {
    return e.path();
  }
  return "<no error>";
}

bool has_finding(const VerificationReport& r, const std::string& prefix) {
  return std::any_of(r.findings.begin(), r.findings.end(),
                     [&](const std::string& f) { return f.rfind(prefix, 0) == 0; });
}

const std::string base_head = R"({"coordinates": ["x", "y", "z"], "domain": ["z"],
  "frame": [["z", "0", "0"], ["0", "z", "0"], ["0", "0", "z"]],
  "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]])";

}  // namespace

TEST_CASE("built-in hyperbolic example is the z-scaled frame with identity metric") {
  const ManifoldSpecFile s = example_spec();
  CHECK(s.name == "paper-example");
  CHECK(s.coordinates == std::vector<std::string>{"x", "y", "z"});
  CHECK(s.frame == std::vector<std::vector<std::string>>{{"z", "0", "0"}, {"0", "z", "0"}, {"0", "0", "z"}});
  REQUIRE(s.metric);
  CHECK((*s.metric)[0] == std::vector<std::string>{"1", "0", "0"});
  CHECK(s.xi == std::vector<std::string>{"0", "0", "1"});

  const LoadedManifold lm = instantiate(s);
  CHECK(lm.notes.empty());
  CHECK(lm.manifold->dim() == 3);
  CHECK(lm.contact.xi == lm.manifold->basis(2));
  CHECK(!builtin_spec("no-such-example"));
}

TEST_CASE("input errors carry field paths") {
  SECTION("2x2 metric on a 3-chart") {
    const std::string text = base_head + R"(, "xi": ["0", "0", "1"], "metric": [["1", "0"], ["0", "1"]]})";
    CHECK(error_path(text) == "/metric");
    try {
      parse_spec_text(text);
      FAIL("expected an error");
    } catch (const SpecError& e) {
      CHECK(std::string(e.what()).find("dimension mismatch") != std::string::npos);
    }
  }
  SECTION("missing field") { CHECK(error_path(base_head + "}") == "/xi"); }
  SECTION("expression parse error") {
    CHECK(error_path(base_head + R"(, "xi": ["0", "0", "1 +"]})") == "/xi/2");
    CHECK(error_path(base_head + R"(, "xi": ["0", "0", "w"]})") == "/xi/2");
  }
  SECTION("short frame row") {
    const std::string text = R"({"coordinates": ["x", "y", "z"], "frame": [["1", "0", "0"], ["0", "1"], ["0", "0", "1"]],
      "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]], "xi": ["0", "0", "1"]})";
    CHECK(error_path(text) == "/frame/1");
  }
  SECTION("declared dimension disagrees with coordinates") {
    CHECK(error_path(base_head + R"(, "xi": ["0", "0", "1"], "dimension": 4})") == "/dimension");
  }
  SECTION("degenerate frame") {
    const std::string text = R"({"coordinates": ["x", "y", "z"], "frame": [["1", "0", "0"], ["1", "0", "0"], ["0", "0", "1"]],
      "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]], "xi": ["0", "0", "1"]})";
    CHECK(error_path(text) == "/frame");
  }
  SECTION("malformed JSON") { CHECK(error_path("{\"coordinates\": [") == ""); }
  SECTION("missing file") { CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), SpecError); }
}

TEST_CASE("omitted metric defaults to identity with a note") {
  const std::string text = base_head + R"(, "xi": ["0", "0", "1"]})";
  const ManifoldSpecFile s = parse_spec_text(text);
  CHECK(!s.metric);
  const LoadedManifold lm = instantiate(s);
  REQUIRE(lm.notes.size() == 1);
  CHECK(lm.notes[0] == "metric omitted: identity metric assumed on the frame");
  const VerificationReport r = verify(s);
  CHECK(r.notes == lm.notes);
  CHECK(r.scalar_curvature == "-6");
}

TEST_CASE("hyperbolic example report") {
  const VerificationReport r = verify(example_spec());
  CHECK(r.structure_valid);
  CHECK(r.extraction_status == "found");
  CHECK(r.alpha == "0");
  CHECK(r.beta == "-1");
  CHECK(r.brackets == std::vector<std::string>{"[e1,e3] = -e1", "[e2,e3] = -e2"});
  CHECK(r.connection ==
        std::vector<std::string>{"nabla_e1 e1 = e3", "nabla_e1 e3 = -e1", "nabla_e2 e2 = e3", "nabla_e2 e3 = -e2"});
  CHECK(r.riemann.size() == 6);
  CHECK(r.ricci == std::vector<std::vector<std::string>>{{"-2", "0", "0"}, {"0", "-2", "0"}, {"0", "0", "-2"}});
  CHECK(r.scalar_curvature == "-6");
  REQUIRE(r.solitons.size() == 1);
  CHECK(r.solitons[0].lambda == "-5");
  CHECK(r.solitons[0].mu == "-1");
  CHECK(r.solitons[0].classification == "shrinking");
  CHECK(r.verdicts.size() == 18);
  for (const auto& v : r.verdicts) CHECK(v.consistent);
  CHECK(r.d_eta_zero);
  CHECK(has_finding(r, "d eta = 0 on this fixture"));
  CHECK(r.findings.size() == 1);
  CHECK(r.exit_code == 0);
}

TEST_CASE("report strings re-parse in the canonical grammar") {
  const VerificationReport r = verify(*builtin_spec("flat-example"));
  const Chart chart(r.coordinates);
  for (const auto& row : r.ricci)
    for (const auto& s : row) CHECK(to_string(parse(s, chart), chart) == s);
  const VerificationReport w = verify(load_spec(TSY_FIXTURE_DIR "/warped.json"));
  const Chart wc(w.coordinates);
  CHECK(to_string(parse(w.scalar_curvature, wc), wc) == w.scalar_curvature);
  CHECK(w.beta == "-1/z");
}

TEST_CASE("quasi-conformal and potential-field options") {
  VerifyOptions o;
  o.quasi_conformal = parse_quasi_conformal("1", "-1");
  const VerificationReport r = verify(example_spec(), o);
  CHECK(r.quasi_conformal_a == "1");
  CHECK(r.quasi_conformal_b == "-1");
  CHECK(r.exit_code == 0);
  const auto it = std::find_if(r.verdicts.begin(), r.verdicts.end(),
                               [](const TheoremVerdict& v) { return v.id == "xi-quasi-conformally-flat"; });
  REQUIRE(it != r.verdicts.end());
  CHECK(it->consistent);
  CHECK(it->witnesses.back() == "lambda + mu = -6, alpha^2 - beta^2 = -1, a + b = 0");

  VerifyOptions f;
  f.potential_field = std::string("0,0,2");
  const VerificationReport rf = verify(example_spec(), f);
  REQUIRE(rf.solitons.size() == 2);
  CHECK(rf.solitons[1].lambda == "-4");
  CHECK(rf.solitons[1].mu == "-2");

  f.potential_field = std::string("e4");
  CHECK_THROWS_AS(verify(example_spec(), f), SpecError);
  CHECK_THROWS_AS(parse_quasi_conformal("x", "1"), SpecError);
}

TEST_CASE("JSON report round-trips and is deterministic") {
  for (const char* name : {"paper-example", "flat-example"}) {
    const VerificationReport r = verify(*builtin_spec(name));
    const Json j = report_to_json(r);
    CHECK(report_from_json(j) == r);
    CHECK(report_from_json(Json::parse(report_json_text(r))) == r);
    CHECK(report_json_text(verify(*builtin_spec(name))) == report_json_text(r));
  }
  const VerificationReport h = verify(load_spec(TSY_FIXTURE_DIR "/heisenberg.json"));
  CHECK(report_from_json(report_to_json(h)) == h);
}

TEST_CASE("shipped fixtures verify consistently") {
  struct Case {
    const char* file;
    const char* alpha;
    const char* beta;
    const char* scalar;
  };
  for (const Case& c : {Case{"heisenberg.json", "-1", "0", "-2"}, Case{"hyperbolic-kenmotsu.json", "0", "1", "-6"},
                        Case{"warped.json", "0", "-1/z", nullptr}}) {
    INFO(c.file);
    const VerificationReport r = verify(load_spec(std::string(TSY_FIXTURE_DIR "/") + c.file));
    CHECK(r.structure_valid);
    CHECK(r.alpha == c.alpha);
    CHECK(r.beta == c.beta);
    if (c.scalar) CHECK(r.scalar_curvature == c.scalar);
    CHECK(r.exit_code == 0);
  }
}

TEST_CASE("structure that is not trans-Sasakian") {
  const VerificationReport r = verify(load_spec(TSY_FIXTURE_DIR "/not-trans-sasakian.json"));
  CHECK(r.structure_valid);
  CHECK(r.extraction_status != "found");
  CHECK(!r.extraction_residuals.empty());
  CHECK(!r.alpha);
  for (const auto& v : r.verdicts)
    if (v.id.rfind("xi-", 0) == 0) CHECK(!v.applicable);
  CHECK(r.exit_code == 0);
}

TEST_CASE("invalid almost contact structure is reported, not rejected") {
  ManifoldSpecFile s = example_spec();
  s.phi = {{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}};
  const VerificationReport r = verify(s);
  CHECK(!r.structure_valid);
  CHECK(r.extraction_status == "skipped");
  CHECK(has_finding(r, "structure: not an almost contact metric structure"));
  CHECK(r.identities.empty());
}
