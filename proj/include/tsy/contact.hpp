#pragma once

// Almost contact metric structures (phi, xi, eta, g) on a frame manifold,
// trans-Sasakian type extraction and the structure identity suite.

#include <tsy/curvature.hpp>
#include <tsy/geometry.hpp>
#include <tsy/linear.hpp>
#include <tsy/verdict.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tsy {

// phi(i, j) is the j-th frame component of phi(e_i).
struct ContactStructure {
  Tensor11 phi;
  FrameVector xi;
  OneForm eta;
};

// eta is taken as g(., xi).
inline ContactStructure make_contact_structure(const FrameManifold& m, Tensor11 phi, FrameVector xi) {
  OneForm eta = m.flat(xi);
  return ContactStructure{std::move(phi), std::move(xi), std::move(eta)};
}

namespace detail {

inline std::string frame_name(std::size_t i) { return "e" + std::to_string(i + 1); }

inline std::vector<std::string> stringify(const FrameVector& v, const Chart& chart) {
  std::vector<std::string> out;
  for (const auto& e : v.flat()) out.push_back(to_string(e, chart));
  return out;
}

inline ResidualRow vector_row(std::string id, std::string inst, const FrameVector& residual, const Chart& chart) {
  ResidualRow r;
  r.identity = std::move(id);
  r.instantiation = std::move(inst);
  r.passed = residual.is_zero();
  r.residual = stringify(residual, chart);
  return r;
}

inline ResidualRow scalar_row(std::string id, std::string inst, const Expr& residual, const Chart& chart) {
  ResidualRow r;
  r.identity = std::move(id);
  r.instantiation = std::move(inst);
  r.passed = residual.is_zero();
  r.residual = {to_string(residual, chart)};
  return r;
}

inline ResidualRow skipped_row(std::string id, std::string why) {
  ResidualRow r;
  r.identity = std::move(id);
  r.instantiation = "-";
  r.applicable = false;
  r.note = std::move(why);
  return r;
}

}  // namespace detail

struct AxiomCheck {
  std::string id;
  std::string statement;
  bool passed = true;
  std::vector<ResidualRow> failures;
};

struct AlmostContactReport {
  std::vector<AxiomCheck> axioms;
  bool passed() const {
    for (const auto& a : axioms)
      if (!a.passed) return false;
    return true;
  }
  const AxiomCheck* find(const std::string& id) const {
    for (const auto& a : axioms)
      if (a.id == id) return &a;
    return nullptr;
  }
};

inline AlmostContactReport validate_almost_contact(const FrameManifold& m, const ContactStructure& c) {
  const std::size_t n = m.dim();
  const Chart& chart = m.chart();
  if (c.phi.dim() != n || c.xi.dim() != n || c.eta.dim() != n)
    throw GeometryError("contact structure dimension does not match the manifold");
  using detail::frame_name;
  AlmostContactReport rep;
  auto add = [&](std::string id, std::string statement, std::vector<ResidualRow> rows) {
    AxiomCheck a{std::move(id), std::move(statement), true, {}};
    for (auto& r : rows)
      if (!r.passed) {
        a.passed = false;
        a.failures.push_back(std::move(r));
      }
    rep.axioms.push_back(std::move(a));
  };

  std::vector<FrameVector> phi_e(n);
  for (std::size_t i = 0; i < n; ++i) phi_e[i] = apply(c.phi, m.basis(i));

  {
    std::vector<ResidualRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
      FrameVector lhs = apply(c.phi, phi_e[i]);
      FrameVector rhs = c.eta(i) * c.xi - m.basis(i);
      rows.push_back(detail::vector_row("phi-squared", "X=" + frame_name(i), lhs - rhs, chart));
    }
    add("phi-squared", "phi^2 X = -X + eta(X) xi", std::move(rows));
  }
  add("eta-xi", "eta(xi) = 1",
      {detail::scalar_row("eta-xi", "-", apply(c.eta, c.xi) - m.constant(1), chart)});
  {
    std::vector<ResidualRow> rows;
    for (std::size_t i = 0; i < n; ++i)
      rows.push_back(detail::scalar_row("eta-phi", "X=" + frame_name(i), apply(c.eta, phi_e[i]), chart));
    add("eta-phi", "eta(phi X) = 0", std::move(rows));
  }
  add("phi-xi", "phi xi = 0", {detail::vector_row("phi-xi", "-", apply(c.phi, c.xi), chart)});
  {
    std::vector<ResidualRow> rows;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Expr r = m.inner(phi_e[i], phi_e[j]) - m.metric()(i, j) + c.eta(i) * c.eta(j);
        rows.push_back(detail::scalar_row("metric-compatibility", "X=" + frame_name(i) + ",Y=" + frame_name(j), r, chart));
      }
    add("metric-compatibility", "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)", std::move(rows));
  }
  {
    std::vector<ResidualRow> rows;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Expr r = m.inner(m.basis(i), phi_e[j]) + m.inner(phi_e[i], m.basis(j));
        rows.push_back(detail::scalar_row("phi-skew", "X=" + frame_name(i) + ",Y=" + frame_name(j), r, chart));
      }
    add("phi-skew", "g(X, phi Y) = -g(phi X, Y)", std::move(rows));
  }
  {
    std::vector<ResidualRow> rows;
    for (std::size_t i = 0; i < n; ++i)
      rows.push_back(detail::scalar_row("eta-dual", "X=" + frame_name(i), m.inner(m.basis(i), c.xi) - c.eta(i), chart));
    add("eta-dual", "g(X, xi) = eta(X)", std::move(rows));
  }
  return rep;
}

struct TransSasakianType {
  Expr alpha;
  Expr beta;
  std::optional<Rational> alpha_constant;
  std::optional<Rational> beta_constant;

  bool constants() const { return alpha_constant.has_value() && beta_constant.has_value(); }
  // alpha^2 - beta^2
  Expr gap() const { return alpha * alpha - beta * beta; }
};

enum class ExtractionStatus { found, undetermined, not_trans_sasakian };

inline const char* to_string(ExtractionStatus s) {
  switch (s) {
    case ExtractionStatus::found: return "found";
    case ExtractionStatus::undetermined: return "undetermined";
    case ExtractionStatus::not_trans_sasakian: return "not-trans-sasakian";
  }
  return "?";
}

struct ExtractionResult {
  ExtractionStatus status = ExtractionStatus::undetermined;
  std::optional<TransSasakianType> type;
  std::vector<ResidualRow> residuals;  // failing instantiations of the defining condition
};

namespace detail {

// (nabla_X phi) Y = nabla_X (phi Y) - phi(nabla_X Y)
inline FrameVector nabla_phi(const FrameManifold& m, const ContactStructure& c, const FrameVector& x,
                             const FrameVector& y) {
  return m.covariant_derivative(x, apply(c.phi, y)) - apply(c.phi, m.covariant_derivative(x, y));
}

struct TransSasakianTerms {
  FrameVector lhs;    // (nabla_X phi) Y
  FrameVector alpha;  // g(X,Y) xi - eta(Y) X
  FrameVector beta;   // g(phi X, Y) xi - eta(Y) phi X
};

inline TransSasakianTerms trans_sasakian_terms(const FrameManifold& m, const ContactStructure& c,
                                               const FrameVector& x, const FrameVector& y) {
  const FrameVector phix = apply(c.phi, x);
  const Expr eta_y = apply(c.eta, y);
  return {nabla_phi(m, c, x, y), m.inner(x, y) * c.xi - eta_y * x, m.inner(phix, y) * c.xi - eta_y * phix};
}

}  // namespace detail

// Solves the defining condition
//   (nabla_X phi) Y = alpha (g(X,Y) xi - eta(Y) X) + beta (g(phi X,Y) xi - eta(Y) phi X)
// for scalar fields alpha, beta: eta-projections of the probe pairs (e_i, xi),
// (e_i, e_j) with i != j come first, then the remaining frame components; the
// first solvable 2x2 subsystem fixes the candidate, which must then satisfy
// every frame pair.
inline ExtractionResult extract_trans_sasakian(const FrameManifold& m, const ContactStructure& c) {
  const std::size_t n = m.dim();
  using detail::frame_name;
  std::vector<std::vector<detail::TransSasakianTerms>> terms(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) terms[i].push_back(detail::trans_sasakian_terms(m, c, m.basis(i), m.basis(j)));

  std::vector<LinearEquation2> eqs;
  auto project = [&](const detail::TransSasakianTerms& t) {
    eqs.push_back({apply(c.eta, t.alpha), apply(c.eta, t.beta), apply(c.eta, t.lhs)});
  };
  for (std::size_t i = 0; i < n; ++i) project(detail::trans_sasakian_terms(m, c, m.basis(i), c.xi));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) project(terms[i][j]);
  for (std::size_t i = 0; i < n; ++i) project(terms[i][i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        eqs.push_back({terms[i][j].alpha(k), terms[i][j].beta(k), terms[i][j].lhs(k)});

  ExtractionResult out;
  const Solve2Result sol = solve_two_unknowns(eqs);
  if (!sol.x) {
    // Rank-deficient probes: alpha and beta cannot be pinned down.
    out.status = sol.status == Solve2Status::inconsistent ? ExtractionStatus::not_trans_sasakian
                                                          : ExtractionStatus::undetermined;
    return out;
  }
  TransSasakianType t{*sol.x, *sol.y, sol.x->constant_value(), sol.y->constant_value()};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& tt = terms[i][j];
      FrameVector r = tt.lhs - t.alpha * tt.alpha - t.beta * tt.beta;
      if (!r.is_zero())
        out.residuals.push_back(detail::vector_row("trans-sasakian", "X=" + frame_name(i) + ",Y=" + frame_name(j), r,
                                                   m.chart()));
    }
  if (!out.residuals.empty()) {
    out.status = ExtractionStatus::not_trans_sasakian;
    return out;
  }
  out.status = ExtractionStatus::found;
  out.type = std::move(t);
  return out;
}

// Identity rows for the structure equations of a trans-Sasakian manifold.
// The 3-dimensional identities are skipped for other dimensions; those that
// need constant alpha, beta are skipped otherwise.
inline std::vector<ResidualRow> verify_structure_identities(const FrameManifold& m, const ContactStructure& c,
                                                            const TransSasakianType& t, const Curvature& curv) {
  const std::size_t n = m.dim();
  const Chart& chart = m.chart();
  using detail::frame_name;
  std::vector<ResidualRow> rows;
  const Expr& alpha = t.alpha;
  const Expr& beta = t.beta;
  const Expr gap = t.gap();
  const Tensor02 g = m.metric_tensor();
  auto X = [&](std::size_t i) { return m.basis(i); };
  auto phiX = [&](std::size_t i) { return apply(c.phi, m.basis(i)); };
  auto pair = [&](std::size_t i, std::size_t j) { return "X=" + frame_name(i) + ",Y=" + frame_name(j); };

  // nabla_X xi = -alpha phi X + beta (X - eta(X) xi)
  for (std::size_t i = 0; i < n; ++i) {
    FrameVector rhs = (-alpha) * phiX(i) + beta * (X(i) - c.eta(i) * c.xi);
    rows.push_back(detail::vector_row("nabla-xi", "X=" + frame_name(i), m.covariant_derivative(X(i), c.xi) - rhs, chart));
  }
  // (nabla_X eta) Y = -alpha g(phi X, Y) + beta g(phi X, phi Y)
  for (std::size_t i = 0; i < n; ++i) {
    const OneForm& eta = c.eta;
    for (std::size_t j = 0; j < n; ++j) {
      Expr lhs = m.derivative_along_basis(i, eta(j)) - apply(eta, m.nabla_basis(i, j));
      Expr rhs = -(alpha * m.inner(phiX(i), X(j))) + beta * m.inner(phiX(i), phiX(j));
      rows.push_back(detail::scalar_row("nabla-eta", pair(i, j), lhs - rhs, chart));
    }
  }
  // (L_xi g)(X, Y) = 2 beta (g(X,Y) - eta(X) eta(Y)), against the bracket-based Lie derivative.
  {
    const Tensor02 lie = lie_derivative_metric(m, c.xi);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Expr rhs = (beta * (g(i, j) - c.eta(i) * c.eta(j))).scaled(2);
        rows.push_back(detail::scalar_row("lie-xi-metric", pair(i, j), lie(i, j) - rhs, chart));
      }
  }

  if (n != 3) {
    for (const char* id : {"xi-alpha", "ricci-xi", "ricci-general", "ricci-eta-einstein", "ricci-xi-constant",
                           "curvature-xi", "curvature-xi-first", "curvature-xi-xi", "eta-curvature", "ricci-operator"})
      rows.push_back(detail::skipped_row(id, "identity holds for dimension 3 only"));
    return rows;
  }

  auto d = [&](const FrameVector& v, const Expr& f) { return m.derivative_along(v, f); };
  // 2 alpha beta + xi(alpha) = 0
  rows.push_back(detail::scalar_row("xi-alpha", "-", (alpha * beta).scaled(2) + d(c.xi, alpha), chart));
  // S(X, xi) = (2(a^2-b^2) - xi b) eta(X) - X b - (phi X) a
  for (std::size_t i = 0; i < n; ++i) {
    Expr lhs = apply(curv.ricci, X(i), c.xi);
    Expr rhs = (gap.scaled(2) - d(c.xi, beta)) * c.eta(i) - d(X(i), beta) - d(phiX(i), alpha);
    rows.push_back(detail::scalar_row("ricci-xi", "X=" + frame_name(i), lhs - rhs, chart));
  }
  // S(X,Y) = (r/2 + xi b - gap) g - (r/2 + xi b - 3 gap) eta eta
  //          - (Y b + (phi Y) a) eta(X) - (X b + (phi X) a) eta(Y)
  {
    const Expr half_r = curv.scalar.scaled(Rational(1, 2));
    const Expr xb = d(c.xi, beta);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Expr rhs = (half_r + xb - gap) * g(i, j) - (half_r + xb - gap.scaled(3)) * c.eta(i) * c.eta(j) -
                   (d(X(j), beta) + d(phiX(j), alpha)) * c.eta(i) - (d(X(i), beta) + d(phiX(i), alpha)) * c.eta(j);
        rows.push_back(detail::scalar_row("ricci-general", pair(i, j), curv.ricci(i, j) - rhs, chart));
      }
  }

  if (!t.constants()) {
    for (const char* id : {"ricci-eta-einstein", "ricci-xi-constant", "curvature-xi", "curvature-xi-first",
                           "curvature-xi-xi", "eta-curvature", "ricci-operator"})
      rows.push_back(detail::skipped_row(id, "requires constant alpha and beta"));
    return rows;
  }

  const Expr half_r = curv.scalar.scaled(Rational(1, 2));
  // S(X,Y) = (r/2 - gap) g(X,Y) - (r/2 - 3 gap) eta(X) eta(Y)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Expr rhs = (half_r - gap) * g(i, j) - (half_r - gap.scaled(3)) * c.eta(i) * c.eta(j);
      rows.push_back(detail::scalar_row("ricci-eta-einstein", pair(i, j), curv.ricci(i, j) - rhs, chart));
    }
  // S(X, xi) = 2 gap eta(X)
  for (std::size_t i = 0; i < n; ++i)
    rows.push_back(detail::scalar_row("ricci-xi-constant", "X=" + frame_name(i),
                                      apply(curv.ricci, X(i), c.xi) - gap.scaled(2) * c.eta(i), chart));
  // R(X,Y) xi = gap (eta(Y) X - eta(X) Y)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FrameVector rhs = gap * (c.eta(j) * X(i) - c.eta(i) * X(j));
      rows.push_back(detail::vector_row("curvature-xi", pair(i, j), apply(curv.riemann, X(i), X(j), c.xi) - rhs, chart));
    }
  // R(xi,X) Y = gap (g(X,Y) xi - eta(Y) X)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FrameVector rhs = gap * (g(i, j) * c.xi - c.eta(j) * X(i));
      rows.push_back(
          detail::vector_row("curvature-xi-first", pair(i, j), apply(curv.riemann, c.xi, X(i), X(j)) - rhs, chart));
    }
  // R(xi,X) xi = gap (eta(X) xi - X)
  for (std::size_t i = 0; i < n; ++i) {
    FrameVector rhs = gap * (c.eta(i) * c.xi - X(i));
    rows.push_back(
        detail::vector_row("curvature-xi-xi", "X=" + frame_name(i), apply(curv.riemann, c.xi, X(i), c.xi) - rhs, chart));
  }
  // eta(R(X,Y)Z) = gap (g(Y,Z) eta(X) - g(X,Z) eta(Y))
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Expr lhs = apply(c.eta, apply(curv.riemann, X(i), X(j), X(k)));
        Expr rhs = gap * (g(j, k) * c.eta(i) - g(i, k) * c.eta(j));
        rows.push_back(
            detail::scalar_row("eta-curvature", pair(i, j) + ",Z=" + frame_name(k), lhs - rhs, chart));
      }
  // QX = (r/2 - gap) X - (r/2 - 3 gap) eta(X) xi
  for (std::size_t i = 0; i < n; ++i) {
    FrameVector rhs = (half_r - gap) * X(i) - ((half_r - gap.scaled(3)) * c.eta(i)) * c.xi;
    rows.push_back(
        detail::vector_row("ricci-operator", "X=" + frame_name(i), apply(curv.ricci_operator, X(i)) - rhs, chart));
  }
  return rows;
}

struct ColinearFactor {
  Expr factor;
  std::optional<Rational> constant;
};

// b with V = b xi, if V is pointwise proportional to xi.
inline std::optional<ColinearFactor> colinearity_factor(const FrameVector& v, const ContactStructure& c) {
  const std::size_t n = v.dim();
  std::optional<std::size_t> k;
  for (std::size_t i = 0; i < n && !k; ++i)
    if (!c.xi(i).is_zero()) k = i;
  if (!k) return std::nullopt;
  const Expr b = v(*k) / c.xi(*k);
  for (std::size_t i = 0; i < n; ++i)
    if (!(v(i) == b * c.xi(i))) return std::nullopt;
  return ColinearFactor{b, b.constant_value()};
}

}  // namespace tsy
