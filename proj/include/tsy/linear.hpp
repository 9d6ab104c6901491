#pragma once

// Exact solving of overdetermined linear systems a_k x + b_k y = c_k whose
// coefficients are expressions. A nonsingular 2x2 subsystem is solved by
// Cramer's rule and the candidate is then checked against every equation.

#include <tsy/expr.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace tsy {

struct LinearEquation2 {
  Expr a, b, c;
};

enum class Solve2Status {
  unique,        // exactly one solution satisfying all equations
  family,        // rank one and consistent: a line of solutions
  unconstrained, // every equation is 0 = 0
  inconsistent,
};

struct Solve2Result {
  Solve2Status status = Solve2Status::inconsistent;
  std::optional<Expr> x, y;
  // For a family: the normalized relation a x + b y = c.
  std::optional<LinearEquation2> relation;
  // Indices of the equations violated by the candidate (if any).
  std::vector<std::size_t> violated;
  std::vector<Expr> residuals;
};

inline Solve2Result solve_two_unknowns(const std::vector<LinearEquation2>& eqs) {
  Solve2Result out;
  for (std::size_t p = 0; p < eqs.size(); ++p) {
    for (std::size_t q = p + 1; q < eqs.size(); ++q) {
      const Expr det = eqs[p].a * eqs[q].b - eqs[p].b * eqs[q].a;
      if (det.is_zero()) continue;
      const Expr x = (eqs[p].c * eqs[q].b - eqs[p].b * eqs[q].c) / det;
      const Expr y = (eqs[p].a * eqs[q].c - eqs[p].c * eqs[q].a) / det;
      out.x = x;
      out.y = y;
      out.status = Solve2Status::unique;
      for (std::size_t k = 0; k < eqs.size(); ++k) {
        Expr r = eqs[k].a * x + eqs[k].b * y - eqs[k].c;
        if (!r.is_zero()) {
          out.status = Solve2Status::inconsistent;
          out.violated.push_back(k);
          out.residuals.push_back(std::move(r));
        }
      }
      return out;
    }
  }

  // Rank <= 1.
  std::optional<std::size_t> pivot;
  for (std::size_t k = 0; k < eqs.size() && !pivot; ++k)
    if (!eqs[k].a.is_zero() || !eqs[k].b.is_zero()) pivot = k;
  if (!pivot) {
    out.status = Solve2Status::unconstrained;
    for (std::size_t k = 0; k < eqs.size(); ++k)
      if (!eqs[k].c.is_zero()) {
        out.status = Solve2Status::inconsistent;
        out.violated.push_back(k);
        out.residuals.push_back(-eqs[k].c);
      }
    return out;
  }
  const LinearEquation2& e = eqs[*pivot];
  const Expr lead = e.a.is_zero() ? e.b : e.a;
  const LinearEquation2 rel{e.a / lead, e.b / lead, e.c / lead};
  out.status = Solve2Status::family;
  out.relation = rel;
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    // Rank one: eqs[k] has the form t * rel on its left-hand side.
    const Expr t = e.a.is_zero() ? eqs[k].b : eqs[k].a;
    Expr r = eqs[k].c - t * rel.c;
    if (!r.is_zero()) {
      out.status = Solve2Status::inconsistent;
      out.violated.push_back(k);
      out.residuals.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace tsy
