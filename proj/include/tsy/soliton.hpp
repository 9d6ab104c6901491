#pragma once

// eta-Yamabe solitons  (1/2) L_V g = (r - lambda) g - mu eta (x) eta,
// eta-Einstein decomposition and the Ricci-tensor parallelism checks.

#include <tsy/contact.hpp>
#include <tsy/curvature.hpp>
#include <tsy/geometry.hpp>
#include <tsy/linear.hpp>
#include <tsy/verdict.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tsy {

enum class SolitonClass { expanding, steady, shrinking };

inline const char* to_string(SolitonClass c) {
  switch (c) {
    case SolitonClass::expanding: return "expanding";
    case SolitonClass::steady: return "steady";
    case SolitonClass::shrinking: return "shrinking";
  }
  return "?";
}

inline SolitonClass classify(const Rational& lambda) {
  if (lambda > 0) return SolitonClass::expanding;
  if (lambda < 0) return SolitonClass::shrinking;
  return SolitonClass::steady;
}

struct SolitonSolution {
  Rational lambda;
  Rational mu;
  Rational r;
  SolitonClass classification = SolitonClass::steady;
  FrameVector potential_field;
};

enum class SolitonStatus {
  solved,
  family,                        // underdetermined: a line of (lambda, mu)
  inconsistent,                  // no (lambda, mu) satisfies every component
  nonconstant_solution,          // the unique solution is not constant
  nonconstant_scalar_curvature,  // precondition failure
};

inline const char* to_string(SolitonStatus s) {
  switch (s) {
    case SolitonStatus::solved: return "solved";
    case SolitonStatus::family: return "family";
    case SolitonStatus::inconsistent: return "inconsistent";
    case SolitonStatus::nonconstant_solution: return "nonconstant-solution";
    case SolitonStatus::nonconstant_scalar_curvature: return "nonconstant-scalar-curvature";
  }
  return "?";
}

struct SolitonResult {
  SolitonStatus status = SolitonStatus::inconsistent;
  std::optional<SolitonSolution> solution;
  Expr scalar_curvature;
  std::optional<Expr> lambda_expr, mu_expr;
  // a lambda + b mu = c, for the family case.
  std::optional<LinearEquation2> relation;
  std::vector<ResidualRow> residuals;
};

// Componentwise: lambda G_ij + mu eta_i eta_j = r G_ij - (1/2)(L_V g)_ij for
// i <= j, solved exactly and verified on every pair.
inline SolitonResult solve_eta_yamabe(const FrameManifold& m, const ContactStructure& c, const Curvature& curv,
                                      const FrameVector& v) {
  SolitonResult out;
  out.scalar_curvature = curv.scalar;
  const auto r = curv.scalar.constant_value();
  const std::size_t n = m.dim();
  const Tensor02 lie = lie_derivative_metric(m, v);
  std::vector<LinearEquation2> eqs;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      eqs.push_back({m.metric()(i, j), c.eta(i) * c.eta(j), curv.scalar * m.metric()(i, j) - lie(i, j).scaled(Rational(1, 2))});
      labels.push_back("X=e" + std::to_string(i + 1) + ",Y=e" + std::to_string(j + 1));
    }
  const Solve2Result sol = solve_two_unknowns(eqs);
  if (!r && sol.status != Solve2Status::unique) {
    out.status = SolitonStatus::nonconstant_scalar_curvature;
    return out;
  }
  for (std::size_t k = 0; k < sol.violated.size(); ++k)
    out.residuals.push_back(detail::scalar_row("eta-yamabe", labels[sol.violated[k]], sol.residuals[k], m.chart()));
  switch (sol.status) {
    case Solve2Status::inconsistent:
      out.status = SolitonStatus::inconsistent;
      out.lambda_expr = sol.x;
      out.mu_expr = sol.y;
      return out;
    case Solve2Status::family:
    case Solve2Status::unconstrained:
      out.status = SolitonStatus::family;
      out.relation = sol.relation;
      return out;
    case Solve2Status::unique:
      break;
  }
  out.lambda_expr = sol.x;
  out.mu_expr = sol.y;
  const auto lambda = sol.x->constant_value();
  const auto mu = sol.y->constant_value();
  if (!r) {
    // Still solved so that a constant (lambda, mu) here would be visible.
    out.status = SolitonStatus::nonconstant_scalar_curvature;
    return out;
  }
  if (!lambda || !mu) {
    out.status = SolitonStatus::nonconstant_solution;
    return out;
  }
  out.status = SolitonStatus::solved;
  out.solution = SolitonSolution{*lambda, *mu, *r, classify(*lambda), v};
  return out;
}

struct EtaEinstein {
  Expr p;
  Expr q;
};

// S = p g + q eta (x) eta, if the Ricci tensor has that form.
inline std::optional<EtaEinstein> eta_einstein_decompose(const FrameManifold& m, const ContactStructure& c,
                                                         const Curvature& curv) {
  const std::size_t n = m.dim();
  std::vector<LinearEquation2> eqs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) eqs.push_back({m.metric()(i, j), c.eta(i) * c.eta(j), curv.ricci(i, j)});
  const Solve2Result sol = solve_two_unknowns(eqs);
  if (sol.status != Solve2Status::unique) return std::nullopt;
  return EtaEinstein{*sol.x, *sol.y};
}

// A tensor identity checked on frame instantiations.
struct TensorCheck {
  std::string id;
  bool holds = true;
  // Both sides vanish identically (e.g. S = 0 for recurrence).
  bool vacuous = false;
  std::vector<ResidualRow> failures;
};

namespace detail {

inline std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "X=e" + std::to_string(i + 1) + ",Y=e" + std::to_string(j + 1) + ",Z=e" + std::to_string(k + 1);
}

}  // namespace detail

// nabla T = 0 on every frame triple (X, Y, Z): (nabla_X T)(Y, Z).
inline TensorCheck parallel_check(const FrameManifold& m, const Tensor02& t, std::string id) {
  TensorCheck out;
  out.id = std::move(id);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const Tensor02 d = covariant_derivative(m, m.basis(i), t);
    for (std::size_t j = 0; j < m.dim(); ++j)
      for (std::size_t k = 0; k < m.dim(); ++k)
        if (!d(j, k).is_zero()) {
          out.holds = false;
          out.failures.push_back(detail::scalar_row(out.id, detail::triple(i, j, k), d(j, k), m.chart()));
        }
  }
  return out;
}

inline TensorCheck ricci_symmetry_check(const FrameManifold& m, const Curvature& curv) {
  return parallel_check(m, curv.ricci, "ricci-symmetric");
}

// (nabla_X S)(Y, Z) = eta(X) S(Y, Z)
inline TensorCheck eta_recurrence_check(const FrameManifold& m, const ContactStructure& c, const Curvature& curv) {
  TensorCheck out;
  out.id = "eta-recurrent";
  bool all_zero = curv.ricci.is_zero();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const Tensor02 d = covariant_derivative(m, m.basis(i), curv.ricci);
    if (!d.is_zero()) all_zero = false;
    for (std::size_t j = 0; j < m.dim(); ++j)
      for (std::size_t k = 0; k < m.dim(); ++k) {
        Expr r = d(j, k) - c.eta(i) * curv.ricci(j, k);
        if (!r.is_zero()) {
          out.holds = false;
          out.failures.push_back(detail::scalar_row(out.id, detail::triple(i, j, k), r, m.chart()));
        }
      }
  }
  out.vacuous = out.holds && all_zero;
  return out;
}

struct ParallelAlongXi {
  TensorCheck ricci_operator;  // (nabla_xi Q) X = 0
  TensorCheck ricci;           // (nabla_xi S)(X, Y) = 0
};

inline ParallelAlongXi parallel_along_xi(const FrameManifold& m, const ContactStructure& c, const Curvature& curv) {
  ParallelAlongXi out;
  out.ricci_operator.id = "ricci-operator-parallel-xi";
  out.ricci.id = "ricci-parallel-xi";
  const Tensor11 dq = covariant_derivative(m, c.xi, curv.ricci_operator);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    FrameVector v = m.zero_vector();
    for (std::size_t j = 0; j < m.dim(); ++j) v(j) = dq(i, j);
    if (!v.is_zero()) {
      out.ricci_operator.holds = false;
      out.ricci_operator.failures.push_back(
          detail::vector_row(out.ricci_operator.id, "X=e" + std::to_string(i + 1), v, m.chart()));
    }
  }
  const Tensor02 ds = covariant_derivative(m, c.xi, curv.ricci);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (!ds(i, j).is_zero()) {
        out.ricci.holds = false;
        out.ricci.failures.push_back(detail::scalar_row(
            out.ricci.id, "X=e" + std::to_string(i + 1) + ",Y=e" + std::to_string(j + 1), ds(i, j), m.chart()));
      }
  return out;
}

inline bool is_flat(const Curvature& curv) { return curv.riemann.is_zero(); }

// Instance-level checks of the soliton statements for a 3-dimensional
// trans-Sasakian manifold whose Reeb field is the potential field.
struct SolitonSuiteInput {
  const FrameManifold* manifold = nullptr;
  const ContactStructure* contact = nullptr;
  const Curvature* curvature = nullptr;
  std::optional<TransSasakianType> type;
  SolitonResult reeb_soliton;                  // V = xi
  std::optional<SolitonResult> field_soliton;  // user potential field, if any
  std::optional<FrameVector> field;
};

inline std::vector<TheoremVerdict> soliton_verdicts(const SolitonSuiteInput& in) {
  const FrameManifold& m = *in.manifold;
  const ContactStructure& c = *in.contact;
  const Curvature& curv = *in.curvature;
  const Chart& chart = m.chart();
  std::vector<TheoremVerdict> out;
  const bool dim3 = m.dim() == 3;
  const bool ts = in.type.has_value();
  const bool constants = ts && in.type->constants();
  const bool has_soliton = in.reeb_soliton.status == SolitonStatus::solved;

  auto gate = [&](const char* id, const char* statement, VerdictKind kind, bool need_constants) -> std::optional<TheoremVerdict> {
    if (!dim3) return not_applicable(id, statement, kind, "manifold is not 3-dimensional");
    if (!ts) return not_applicable(id, statement, kind, "no trans-Sasakian type");
    if (need_constants && !constants) return not_applicable(id, statement, kind, "alpha, beta not constant");
    return std::nullopt;
  };

  {
    const char* id = "soliton-scalar-curvature";
    const char* st = "eta-Yamabe soliton with V = xi implies r constant and r = lambda + mu";
    if (auto na = gate(id, st, VerdictKind::implication, false)) {
      out.push_back(*na);
    } else {
      bool concl = false;
      std::vector<std::string> w;
      const auto& rs = in.reeb_soliton;
      // A constant (lambda, mu) alongside non-constant r would be a counterexample.
      const bool counter = rs.status == SolitonStatus::nonconstant_scalar_curvature && rs.lambda_expr &&
                           rs.lambda_expr->constant_value() && rs.mu_expr->constant_value();
      if (has_soliton) {
        const auto& s = *rs.solution;
        concl = s.r == s.lambda + s.mu;
        w.push_back("r = " + s.r.get_str() + ", lambda + mu = " + Rational(s.lambda + s.mu).get_str());
      }
      if (counter) w.push_back("r = " + to_string(rs.scalar_curvature, chart) + " with constant lambda, mu");
      auto v = make_verdict(id, st, VerdictKind::implication, has_soliton || counter, concl);
      v.witnesses = std::move(w);
      out.push_back(v);
    }
  }
  {
    const char* id = "yamabe-reeb-killing";
    const char* st = "soliton with V = xi and mu = 0 implies L_xi g = 0";
    if (auto na = gate(id, st, VerdictKind::implication, false)) {
      out.push_back(*na);
    } else {
      const bool hyp = has_soliton && in.reeb_soliton.solution->mu == 0;
      const bool killing = lie_derivative_metric(m, c.xi).is_zero();
      out.push_back(make_verdict(id, st, VerdictKind::implication, hyp, killing));
    }
  }
  const auto ee = eta_einstein_decompose(m, c, curv);
  {
    const char* id = "soliton-eta-einstein";
    const char* st = "soliton with V = xi implies S = p g + q eta(x)eta with the closed-form p, q";
    if (auto na = gate(id, st, VerdictKind::implication, true)) {
      out.push_back(*na);
    } else {
      bool concl = false;
      std::vector<std::string> w;
      if (ee) {
        w.push_back("p = " + to_string(ee->p, chart) + ", q = " + to_string(ee->q, chart));
        if (has_soliton) {
          const auto& s = *in.reeb_soliton.solution;
          const Expr half = m.constant((s.lambda + s.mu) / 2);
          const Expr gap = in.type->gap();
          const Expr p = half - gap;
          const Expr q = -(half - gap.scaled(3));
          concl = ee->p == p && ee->q == q;
          w.push_back("closed form p = " + to_string(p, chart) + ", q = " + to_string(q, chart));
        }
      }
      auto v = make_verdict(id, st, VerdictKind::implication, has_soliton, concl);
      v.witnesses = std::move(w);
      out.push_back(v);
    }
  }
  const TensorCheck sym = ricci_symmetry_check(m, curv);
  const TensorCheck rec = eta_recurrence_check(m, c, curv);
  std::optional<Rational> gap;
  if (constants) gap = *in.type->alpha_constant * *in.type->alpha_constant - *in.type->beta_constant * *in.type->beta_constant;
  {
    const char* id = "ricci-symmetric";
    const char* st = "soliton with V = xi and nabla S = 0 implies lambda + mu = 6(alpha^2 - beta^2)";
    if (auto na = gate(id, st, VerdictKind::implication, true)) {
      out.push_back(*na);
    } else {
      bool concl = false;
      if (has_soliton) {
        const auto& s = *in.reeb_soliton.solution;
        concl = s.lambda + s.mu == 6 * *gap;
      }
      auto v = make_verdict(id, st, VerdictKind::implication, has_soliton && sym.holds, concl);
      if (!sym.holds) v.note = "Ricci tensor is not parallel";
      out.push_back(v);
    }
  }
  {
    const char* id = "eta-recurrent";
    const char* st = "soliton with V = xi and nabla S = eta (x) S implies alpha = +-beta";
    if (auto na = gate(id, st, VerdictKind::implication, true)) {
      out.push_back(*na);
    } else {
      auto v = make_verdict(id, st, VerdictKind::implication, has_soliton && rec.holds, *gap == 0);
      if (rec.vacuous) v.note = "vacuous recurrence: both sides vanish";
      if (!rec.holds) v.note = "Ricci tensor is not eta-recurrent";
      out.push_back(v);
    }
  }
  {
    const char* id = "ricci-symmetric-eta-recurrent-flat";
    const char* st = "soliton with V = xi, nabla S = 0 and nabla S = eta (x) S implies R = 0";
    if (auto na = gate(id, st, VerdictKind::implication, true)) {
      out.push_back(*na);
    } else {
      out.push_back(make_verdict(id, st, VerdictKind::implication, has_soliton && sym.holds && rec.holds, is_flat(curv)));
    }
  }
  {
    // The potential field: the user-supplied one when given, else xi.
    const FrameVector field = in.field ? *in.field : c.xi;
    const SolitonResult& sol = in.field_soliton ? *in.field_soliton : in.reeb_soliton;
    const auto colinear = colinearity_factor(field, c);
    const bool soliton = sol.status == SolitonStatus::solved;
    {
      const char* id = "colinear-potential-constant";
      const char* st = "soliton with V = b xi implies b constant";
      if (auto na = gate(id, st, VerdictKind::implication, false)) {
        out.push_back(*na);
      } else {
        const bool hyp = soliton && colinear.has_value();
        const bool concl = colinear && colinear->constant.has_value();
        auto v = make_verdict(id, st, VerdictKind::implication, hyp, concl);
        if (colinear) v.witnesses.push_back("b = " + to_string(colinear->factor, chart));
        if (!colinear) v.note = "potential field is not colinear with xi";
        else if (!soliton) v.note = "no constant (lambda, mu) soliton for this potential field";
        out.push_back(v);
      }
    }
    {
      const char* id = "colinear-killing-iff-yamabe";
      const char* st = "for a soliton with V = b xi: V is Killing iff mu = 0";
      if (auto na = gate(id, st, VerdictKind::biconditional, false)) {
        out.push_back(*na);
      } else if (!soliton || !colinear) {
        out.push_back(not_applicable(id, st, VerdictKind::biconditional,
                                     !colinear ? "potential field is not colinear with xi" : "no soliton for this potential field"));
      } else {
        const bool killing = lie_derivative_metric(m, field).is_zero();
        out.push_back(make_verdict(id, st, VerdictKind::biconditional, killing, sol.solution->mu == 0));
      }
    }
  }
  {
    const char* id = "ricci-parallel-along-xi";
    const char* st = "soliton with V = xi implies nabla_xi Q = 0 and nabla_xi S = 0";
    if (auto na = gate(id, st, VerdictKind::implication, true)) {
      out.push_back(*na);
    } else {
      const ParallelAlongXi p = parallel_along_xi(m, c, curv);
      auto v = make_verdict(id, st, VerdictKind::implication, has_soliton, p.ricci.holds && p.ricci_operator.holds);
      for (const auto& f : p.ricci_operator.failures) v.witnesses.push_back(f.identity + " " + f.instantiation);
      for (const auto& f : p.ricci.failures) v.witnesses.push_back(f.identity + " " + f.instantiation);
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace tsy
