#pragma once

// Manifold spec files (JSON) and the two built-in fixtures.
//
// {
//   "name": "...",                         optional
//   "dimension": 3,                         optional, checked against coordinates
//   "coordinates": ["x", "y", "z"],
//   "domain": ["z"],                        expressions required nonzero, optional
//   "frame": [["z","0","0"], ...],          e_i in the coordinate basis
//   "metric": [["1","0","0"], ...],         g(e_i, e_j); identity when omitted
//   "phi": [["0","-1","0"], ...],           row i = frame components of phi(e_i)
//   "xi": ["0","0","1"],                    frame components
//   "potential_field": "xi" | ["0","0","1"],optional
//   "quasi_conformal": ["1","1"]            optional (a, b)
// }
//
// Expression entries may also be JSON integers.

#include <tsy/contact.hpp>
#include <tsy/expr.hpp>
#include <tsy/geometry.hpp>

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tsy {

// Input problems, located by a JSON-pointer-like field path.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string path, const std::string& what)
      : std::runtime_error((path.empty() ? std::string("spec") : path) + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

using PotentialFieldSpec = std::variant<std::string, std::vector<std::string>>;

struct ManifoldSpecFile {
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<std::string> domain;
  std::vector<std::vector<std::string>> frame;
  std::optional<std::vector<std::vector<std::string>>> metric;
  std::vector<std::vector<std::string>> phi;
  std::vector<std::string> xi;
  std::optional<PotentialFieldSpec> potential_field;
  std::optional<std::pair<std::string, std::string>> quasi_conformal;
};

// A spec turned into geometry. The manifold owns a copy of the chart.
struct LoadedManifold {
  std::shared_ptr<const FrameManifold> manifold;
  ContactStructure contact;
  std::vector<std::string> notes;
};

namespace detail {

inline std::string field_text(const nlohmann::json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw SpecError(path, "expected an expression string or integer");
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw SpecError(std::string("/") + key, "missing field");
  return obj.at(key);
}

inline std::vector<std::string> string_list(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw SpecError(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(field_text(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline std::vector<std::vector<std::string>> string_matrix(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw SpecError(path, "expected an array of rows");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_list(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline void check_square(const std::vector<std::vector<std::string>>& m, std::size_t n, const std::string& path) {
  if (m.size() != n)
    throw SpecError(path, "dimension mismatch: expected " + std::to_string(n) + " rows, got " + std::to_string(m.size()));
  for (std::size_t i = 0; i < n; ++i)
    if (m[i].size() != n)
      throw SpecError(path + "/" + std::to_string(i), "dimension mismatch: expected " + std::to_string(n) +
                                                          " entries, got " + std::to_string(m[i].size()));
}

inline Expr parse_at(const std::string& text, const Chart& chart, const std::string& path) {
  try {
    return parse(text, chart);
  } catch (const ParseError& e) {
    throw SpecError(path, std::string("cannot parse '") + text + "': " + e.what());
  }
}

}  // namespace detail

inline ManifoldSpecFile parse_spec_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("", "expected a JSON object");
  ManifoldSpecFile s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SpecError("/name", "expected a string");
    s.name = j["name"].get<std::string>();
  }
  s.coordinates = detail::string_list(detail::require(j, "coordinates"), "/coordinates");
  const std::size_t n = s.coordinates.size();
  if (j.contains("dimension")) {
    if (!j["dimension"].is_number_integer()) throw SpecError("/dimension", "expected an integer");
    if (j["dimension"].get<long long>() != static_cast<long long>(n))
      throw SpecError("/dimension", "dimension mismatch: " + std::to_string(n) + " coordinates declared");
  }
  if (j.contains("domain")) s.domain = detail::string_list(j["domain"], "/domain");
  s.frame = detail::string_matrix(detail::require(j, "frame"), "/frame");
  detail::check_square(s.frame, n, "/frame");
  if (j.contains("metric")) {
    s.metric = detail::string_matrix(j["metric"], "/metric");
    detail::check_square(*s.metric, n, "/metric");
  }
  s.phi = detail::string_matrix(detail::require(j, "phi"), "/phi");
  detail::check_square(s.phi, n, "/phi");
  s.xi = detail::string_list(detail::require(j, "xi"), "/xi");
  if (s.xi.size() != n)
    throw SpecError("/xi", "dimension mismatch: expected " + std::to_string(n) + " entries, got " +
                               std::to_string(s.xi.size()));
  if (j.contains("potential_field")) {
    const auto& v = j["potential_field"];
    if (v.is_string())
      s.potential_field = v.get<std::string>();
    else
      s.potential_field = detail::string_list(v, "/potential_field");
  }
  if (j.contains("quasi_conformal")) {
    const auto ab = detail::string_list(j["quasi_conformal"], "/quasi_conformal");
    if (ab.size() != 2) throw SpecError("/quasi_conformal", "expected [a, b]");
    s.quasi_conformal = std::pair{ab[0], ab[1]};
  }
  return s;
}

inline ManifoldSpecFile parse_spec_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_spec_json(j);
}

inline const char* hyperbolic_example_json() {
  return R"({
  "name": "paper-example",
  "dimension": 3,
  "coordinates": ["x", "y", "z"],
  "domain": ["z"],
  "frame": [["z", "0", "0"], ["0", "z", "0"], ["0", "0", "z"]],
  "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
  "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]],
  "xi": ["0", "0", "1"]
})";
}

inline const char* flat_example_json() {
  return R"({
  "name": "flat-example",
  "dimension": 3,
  "coordinates": ["x", "y", "z"],
  "frame": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
  "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
  "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]],
  "xi": ["0", "0", "1"]
})";
}

inline std::optional<ManifoldSpecFile> builtin_spec(const std::string& name) {
  if (name == "paper-example") return parse_spec_text(hyperbolic_example_json());
  if (name == "flat-example") return parse_spec_text(flat_example_json());
  return std::nullopt;
}

// A built-in name, else a path to a JSON file.
inline ManifoldSpecFile load_spec(const std::string& path_or_name) {
  if (auto b = builtin_spec(path_or_name)) return *b;
  std::ifstream in(path_or_name);
  if (!in) throw SpecError("", "cannot open '" + path_or_name + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

inline LoadedManifold instantiate(const ManifoldSpecFile& s) {
  const std::size_t n = s.coordinates.size();
  Chart chart;
  try {
    chart = Chart(s.coordinates);
  } catch (const std::invalid_argument& e) {
    throw SpecError("/coordinates", e.what());
  }
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    const std::string path = "/domain/" + std::to_string(i);
    try {
      chart.add_domain_constraint(detail::parse_at(s.domain[i], chart, path));
    } catch (const std::invalid_argument& e) {
      throw SpecError(path, e.what());
    }
  }

  LoadedManifold out;
  std::vector<VectorField> frame(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      frame[i].components.push_back(
          detail::parse_at(s.frame[i][k], chart, "/frame/" + std::to_string(i) + "/" + std::to_string(k)));
  ExprMatrix g = ExprMatrix::identity(n, n);
  if (s.metric) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        g(i, k) = detail::parse_at((*s.metric)[i][k], chart, "/metric/" + std::to_string(i) + "/" + std::to_string(k));
  } else {
    out.notes.push_back("metric omitted: identity metric assumed on the frame");
  }
  try {
    out.manifold = std::make_shared<const FrameManifold>(chart, std::move(frame), std::move(g));
  } catch (const GeometryError& e) {
    const std::string what = e.what();
    throw SpecError(what.rfind("metric", 0) == 0 ? "/metric" : "/frame", what);
  }

  Tensor11 phi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      phi(i, k) = detail::parse_at(s.phi[i][k], chart, "/phi/" + std::to_string(i) + "/" + std::to_string(k));
  FrameVector xi(n, n);
  for (std::size_t k = 0; k < n; ++k) xi(k) = detail::parse_at(s.xi[k], chart, "/xi/" + std::to_string(k));
  out.contact = make_contact_structure(*out.manifold, std::move(phi), std::move(xi));
  return out;
}

// "xi", "e1".."en", or frame components "[a, b, c]" / "a, b, c".
inline FrameVector resolve_potential_field(const PotentialFieldSpec& spec, const FrameManifold& m,
                                           const ContactStructure& c, const std::string& path = "/potential_field") {
  const std::size_t n = m.dim();
  std::vector<std::string> parts;
  if (const auto* name = std::get_if<std::string>(&spec)) {
    std::string t = *name;
    if (t == "xi") return c.xi;
    if (t.size() >= 2 && t[0] == 'e' && t.find_first_not_of("0123456789", 1) == std::string::npos) {
      const std::size_t i = std::stoul(t.substr(1));
      if (i < 1 || i > n) throw SpecError(path, "no frame vector named '" + t + "'");
      return m.basis(i - 1);
    }
    if (!t.empty() && t.front() == '[') {
      if (t.back() != ']') throw SpecError(path, "unbalanced '[' in '" + t + "'");
      t = t.substr(1, t.size() - 2);
    }
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = t.find(',', start);
      parts.push_back(t.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() == 1) throw SpecError(path, "unknown field name '" + *name + "'");
  } else {
    parts = std::get<std::vector<std::string>>(spec);
  }
  if (parts.size() != n)
    throw SpecError(path, "dimension mismatch: expected " + std::to_string(n) + " components, got " +
                              std::to_string(parts.size()));
  FrameVector v(n, m.nvars());
  for (std::size_t k = 0; k < n; ++k) v(k) = detail::parse_at(parts[k], m.chart(), path + "/" + std::to_string(k));
  return v;
}

// "a,b" with rational entries.
inline std::pair<Rational, Rational> parse_quasi_conformal(const std::string& a, const std::string& b,
                                                           const std::string& path = "/quasi_conformal") {
  const Chart none({"u", "v"});
  auto value = [&](const std::string& t, const std::string& p) {
    const auto v = detail::parse_at(t, none, p).constant_value();
    if (!v) throw SpecError(p, "expected a rational constant, got '" + t + "'");
    return *v;
  };
  return {value(a, path + "/0"), value(b, path + "/1")};
}

}  // namespace tsy
