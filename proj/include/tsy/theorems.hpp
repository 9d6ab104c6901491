#pragma once

// Curvature-condition statements for a 3-dimensional trans-Sasakian manifold
// carrying an eta-Yamabe soliton with V = xi. Each tensor-side condition is
// evaluated on the curvature tensors themselves; each scalar-side condition
// only from (lambda, mu, alpha, beta). Agreement is then judged per statement.

#include <tsy/contact.hpp>
#include <tsy/curvature.hpp>
#include <tsy/soliton.hpp>
#include <tsy/verdict.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tsy {

struct SuiteInput {
  const FrameManifold* manifold = nullptr;
  const ContactStructure* contact = nullptr;
  const Curvature* curvature = nullptr;
  std::optional<TransSasakianType> type;
  std::optional<SolitonSolution> soliton;  // with V = xi
  Rational a = 1;
  Rational b = 1;
};

namespace detail {

// Witness strings for every nonzero T(e_i, e_j) xi.
inline std::vector<std::string> xi_slot_failures(const FrameManifold& m, const Tensor13& t, const FrameVector& xi,
                                                 const std::string& name) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const FrameVector v = apply(t, m.basis(i), m.basis(j), xi);
      if (v.is_zero()) continue;
      std::string s = name + "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")xi = [";
      for (std::size_t k = 0; k < v.dim(); ++k) s += (k ? ", " : "") + to_string(v(k), m.chart());
      out.push_back(s + "]");
    }
  return out;
}

inline std::vector<std::string> array_failures(const FrameManifold& m, const Array3& a, const std::string& name) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < m.dim(); ++x)
    for (std::size_t y = 0; y < m.dim(); ++y)
      for (std::size_t z = 0; z < m.dim(); ++z)
        if (!a(x, y, z).is_zero())
          out.push_back(name + " at (e" + std::to_string(x + 1) + ",e" + std::to_string(y + 1) + ",e" +
                        std::to_string(z + 1) + ") = " + to_string(a(x, y, z), m.chart()));
  return out;
}

}  // namespace detail

inline std::vector<TheoremVerdict> run_suite(const SuiteInput& in) {
  struct Item {
    const char* id;
    const char* statement;
    VerdictKind kind;
  };
  static const Item items[] = {
      {"xi-projectively-flat", "P(X,Y)xi = 0", VerdictKind::unconditional},
      {"xi-concircularly-flat", "C~(X,Y)xi = 0 iff lambda + mu = 6(alpha^2 - beta^2)", VerdictKind::biconditional},
      {"xi-conharmonically-flat", "H(X,Y)xi = 0 iff lambda + mu = 0", VerdictKind::biconditional},
      {"xi-quasi-conformally-flat", "C*(X,Y)xi = 0 iff a + b = 0 or lambda + mu = 6(alpha^2 - beta^2)",
       VerdictKind::biconditional},
      {"xi-semi-symmetric", "R(xi,X).S = 0 implies alpha^2 - beta^2 = 0 or lambda + mu = 6(alpha^2 - beta^2)",
       VerdictKind::implication},
      {"w2-xi-semi-symmetric",
       "W2(xi,X).S = 0 implies lambda + mu = 2(alpha^2 - beta^2) or lambda + mu = 6(alpha^2 - beta^2)",
       VerdictKind::implication},
      {"concircular-recurrent-flat", "xi-concircularly flat and S eta-recurrent implies R = 0", VerdictKind::implication},
      {"quasi-conformal-recurrent-flat", "xi-quasi-conformally flat, S eta-recurrent and a + b != 0 implies R = 0",
       VerdictKind::implication},
      {"w2-recurrent-flat", "W2(xi,X).S = 0 and S eta-recurrent implies R = 0", VerdictKind::implication},
  };

  std::string why;
  if (in.manifold->dim() != 3)
    why = "manifold is not 3-dimensional";
  else if (!in.type)
    why = "no trans-Sasakian type";
  else if (!in.type->constants())
    why = "alpha, beta not constant";
  else if (!in.soliton)
    why = "no eta-Yamabe soliton with V = xi";
  if (!why.empty()) {
    std::vector<TheoremVerdict> out;
    for (const auto& it : items) out.push_back(not_applicable(it.id, it.statement, it.kind, why));
    return out;
  }

  const FrameManifold& m = *in.manifold;
  const ContactStructure& c = *in.contact;
  const Curvature& curv = *in.curvature;
  const Rational alpha = *in.type->alpha_constant, beta = *in.type->beta_constant;
  const Rational gap = alpha * alpha - beta * beta;
  const Rational sum = in.soliton->lambda + in.soliton->mu;
  const std::string scalars = "lambda + mu = " + sum.get_str() + ", alpha^2 - beta^2 = " + gap.get_str() +
                              ", a + b = " + Rational(in.a + in.b).get_str();

  const auto p_fail = detail::xi_slot_failures(m, projective(curv), c.xi, "P");
  const auto cc_fail = detail::xi_slot_failures(m, concircular(curv), c.xi, "C~");
  const auto h_fail = detail::xi_slot_failures(m, conharmonic(curv), c.xi, "H");
  const auto q_fail = detail::xi_slot_failures(m, quasi_conformal(curv, in.a, in.b), c.xi, "C*");
  const auto rs_fail = detail::array_failures(m, derivation_action(curv.riemann, curv.ricci, c.xi), "R(xi,X).S");
  const auto ws_fail = detail::array_failures(m, derivation_action(w2(curv), curv.ricci, c.xi), "W2(xi,X).S");
  const TensorCheck rec = eta_recurrence_check(m, c, curv);
  const bool flat = is_flat(curv);

  const bool six = sum == 6 * gap;
  std::vector<TheoremVerdict> out;
  auto push = [&](const Item& it, bool lhs, bool rhs, const std::vector<std::string>& wit) {
    TheoremVerdict v = make_verdict(it.id, it.statement, it.kind, lhs, rhs);
    v.witnesses = wit;
    v.witnesses.push_back(scalars);
    out.push_back(std::move(v));
  };
  push(items[0], p_fail.empty(), true, p_fail);
  push(items[1], cc_fail.empty(), six, cc_fail);
  push(items[2], h_fail.empty(), sum == 0, h_fail);
  push(items[3], q_fail.empty(), in.a + in.b == 0 || six, q_fail);
  push(items[4], rs_fail.empty(), gap == 0 || six, rs_fail);
  push(items[5], ws_fail.empty(), sum == 2 * gap || six, ws_fail);
  push(items[6], cc_fail.empty() && rec.holds, flat, {});
  push(items[7], q_fail.empty() && rec.holds && in.a + in.b != 0, flat, {});
  push(items[8], ws_fail.empty() && rec.holds, flat, {});
  for (std::size_t k = 6; k < out.size(); ++k)
    if (!rec.holds) out[k].note = "hypothesis not met: Ricci tensor is not eta-recurrent";
  return out;
}

}  // namespace tsy
