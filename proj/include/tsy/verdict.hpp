#pragma once

// Report records shared by the identity, soliton and theorem checks.

#include <string>
#include <utility>
#include <vector>

namespace tsy {

// One instantiation of an identity on frame vectors.
struct ResidualRow {
  std::string identity;
  std::string instantiation;
  std::vector<std::string> residual;  // canonical expression text, one per component
  bool passed = true;
  bool applicable = true;
  std::string note;

  bool operator==(const ResidualRow&) const = default;
};

enum class VerdictKind { unconditional, biconditional, implication };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::unconditional: return "unconditional";
    case VerdictKind::biconditional: return "biconditional";
    case VerdictKind::implication: return "implication";
  }
  return "?";
}

// lhs is the tensor-side (or hypothesis) condition, rhs the scalar-side (or
// conclusion) condition. For an implication, consistent = !(lhs && !rhs).
struct TheoremVerdict {
  std::string id;
  std::string statement;
  VerdictKind kind = VerdictKind::biconditional;
  bool applicable = true;
  bool lhs_holds = false;
  bool rhs_holds = false;
  bool consistent = true;
  std::vector<std::string> witnesses;
  std::string note;

  bool operator==(const TheoremVerdict&) const = default;
};

inline TheoremVerdict make_verdict(std::string id, std::string statement, VerdictKind kind, bool lhs, bool rhs) {
  TheoremVerdict v;
  v.id = std::move(id);
  v.statement = std::move(statement);
  v.kind = kind;
  v.lhs_holds = lhs;
  v.rhs_holds = rhs;
  switch (kind) {
    case VerdictKind::unconditional: v.consistent = lhs; break;
    case VerdictKind::biconditional: v.consistent = lhs == rhs; break;
    case VerdictKind::implication: v.consistent = !(lhs && !rhs); break;
  }
  return v;
}

inline TheoremVerdict not_applicable(std::string id, std::string statement, VerdictKind kind, std::string why) {
  TheoremVerdict v;
  v.id = std::move(id);
  v.statement = std::move(statement);
  v.kind = kind;
  v.applicable = false;
  v.consistent = true;
  v.note = std::move(why);
  return v;
}

}  // namespace tsy
