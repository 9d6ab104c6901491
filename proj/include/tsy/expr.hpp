#pragma once

// Scalar fields on a coordinate chart as canonical rational functions over Q.
//
// An Expr is num/den with gcd(num, den) = 1 and den monic in lex order; the
// zero field is 0/1. Under that normalization structural equality is
// mathematical equality, which is how every "= 0" identity gets decided.

#include <tsy/polynomial.hpp>

#include <cctype>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tsy {

class Expr {
 public:
  Expr() : num_(0), den_(Polynomial::constant(0, 1)) {}
  explicit Expr(std::size_t nvars) : num_(nvars), den_(Polynomial::constant(nvars, 1)) {}

  static Expr constant(std::size_t nvars, const Rational& c) {
    return Expr(Polynomial::constant(nvars, c), Polynomial::constant(nvars, 1), Canonical{});
  }
  static Expr coordinate(std::size_t nvars, std::size_t index) {
    return Expr(Polynomial::variable(nvars, index), Polynomial::constant(nvars, 1), Canonical{});
  }
  static Expr from_polynomial(Polynomial p) {
    const auto n = p.nvars();
    return Expr(std::move(p), Polynomial::constant(n, 1), Canonical{});
  }
  // Normalizes an arbitrary quotient.
  static Expr quotient(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
    const Polynomial g = gcd(num, den);
    return normalized(divide_exact(num, g), divide_exact(den, g));
  }

  std::size_t nvars() const { return num_.nvars(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  std::optional<Rational> constant_value() const {
    if (num_.is_constant() && den_.is_constant()) return num_.constant_value();
    return std::nullopt;
  }
  bool is_polynomial() const { return den_.is_constant(); }

  bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }

  Expr operator-() const { return Expr(-num_, den_, Canonical{}); }

  friend Expr operator+(const Expr& a, const Expr& b) { return add(a, b, false); }
  friend Expr operator-(const Expr& a, const Expr& b) { return add(a, b, true); }

  friend Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr(a.nvars());
    if (a.is_polynomial() && b.is_polynomial()) return from_polynomial(a.num_ * b.num_);
    const Polynomial g1 = gcd(a.num_, b.den_);
    const Polynomial g2 = gcd(b.num_, a.den_);
    return normalized(divide_exact(a.num_, g1) * divide_exact(b.num_, g2),
                      divide_exact(a.den_, g2) * divide_exact(b.den_, g1));
  }

  friend Expr operator/(const Expr& a, const Expr& b) { return a * b.reciprocal(); }

  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  Expr scaled(const Rational& c) const {
    if (c == 0) return Expr(nvars());
    return Expr(num_.scaled(c), den_, Canonical{});
  }

  Expr reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of the zero expression");
    return normalized(den_, num_);
  }

  Expr pow(int k) const {
    if (k < 0) return reciprocal().pow(-k);
    return Expr(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), Canonical{});
  }

  // d/dx_index via the quotient rule.
  Expr derivative(std::size_t index) const {
    if (index >= nvars()) throw std::out_of_range("coordinate index out of range");
    if (is_polynomial()) return from_polynomial(num_.derivative(index)).scaled(1 / den_.constant_value());
    return quotient(num_.derivative(index) * den_ - num_ * den_.derivative(index), den_ * den_);
  }

  Rational evaluate(std::span<const Rational> point) const {
    const Rational d = den_.evaluate(point);
    if (d == 0) throw std::domain_error("denominator vanishes at the evaluation point");
    return num_.evaluate(point) / d;
  }

 private:
  struct Canonical {};
  Expr(Polynomial num, Polynomial den, Canonical) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) den_ = Polynomial::constant(num_.nvars(), 1);
  }

  // Inputs are coprime; fixes the unit so the denominator is monic.
  static Expr normalized(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
    const Rational lc = den.leading_coefficient();
    if (lc != 1) {
      num = num.scaled(1 / lc);
      den = den.scaled(1 / lc);
    }
    return Expr(std::move(num), std::move(den), Canonical{});
  }

  static Expr add(const Expr& a, const Expr& b, bool subtract) {
    const Polynomial bn = subtract ? -b.num_ : b.num_;
    if (a.is_zero()) return Expr(bn, b.den_, Canonical{});
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      if (a.is_polynomial()) return Expr(a.num_ + bn, a.den_, Canonical{});
      const Polynomial n = a.num_ + bn;
      const Polynomial g = gcd(n, a.den_);
      return normalized(divide_exact(n, g), divide_exact(a.den_, g));
    }
    const Polynomial g = gcd(a.den_, b.den_);
    const Polynomial ad = divide_exact(a.den_, g), bd = divide_exact(b.den_, g);
    const Polynomial n = a.num_ * bd + bn * ad;
    const Polynomial den = a.den_ * bd;
    // Any common factor of n and den already divides g.
    const Polynomial h = gcd(n, g);
    return normalized(divide_exact(n, h), divide_exact(den, h));
  }

  Polynomial num_;
  Polynomial den_;
};

inline Expr operator*(const Rational& c, const Expr& e) { return e.scaled(c); }

// The coordinate system all expressions of a manifold live on.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> coord_names) : names_(std::move(coord_names)) {
    if (names_.size() < 2) throw std::invalid_argument("chart dimension must be at least 2");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (!is_identifier(n)) throw std::invalid_argument("invalid coordinate name '" + n + "'");
      if (!seen.insert(n).second) throw std::invalid_argument("duplicate coordinate name '" + n + "'");
    }
  }

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& coord_names() const { return names_; }
  const std::vector<Expr>& domain_constraints() const { return constraints_; }

  // Registers an expression required to be nonzero on the domain.
  void add_domain_constraint(Expr e) {
    if (e.nvars() != dim()) throw std::invalid_argument("constraint built on a different chart");
    if (e.is_zero()) throw std::invalid_argument("domain constraint is identically zero");
    constraints_.push_back(std::move(e));
  }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  bool admits(std::span<const Rational> point) const {
    if (point.size() != dim()) return false;
    for (const auto& c : constraints_) {
      if (c.denominator().evaluate(point) == 0) return false;
      if (c.numerator().evaluate(point) == 0) return false;
    }
    return true;
  }

  Expr zero() const { return Expr(dim()); }
  Expr constant(const Rational& c) const { return Expr::constant(dim(), c); }
  Expr coordinate(std::size_t i) const { return Expr::coordinate(dim(), i); }

  static bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
  }

  bool operator==(const Chart& o) const { return names_ == o.names_ && constraints_ == o.constraints_; }

 private:
  std::vector<std::string> names_;
  std::vector<Expr> constraints_;
};

inline Rational evaluate(const Expr& e, const Chart& chart, std::span<const Rational> point) {
  if (point.size() != chart.dim()) throw std::invalid_argument("point has the wrong dimension");
  if (!chart.admits(point)) throw std::domain_error("point violates a domain constraint");
  return e.evaluate(point);
}

inline bool is_zero(const Expr& e) { return e.is_zero(); }
inline std::optional<Rational> is_constant(const Expr& e) { return e.constant_value(); }
inline Expr differentiate(const Expr& e, std::size_t coord) { return e.derivative(coord); }

// ---------------------------------------------------------------------------
// Printing. The output is valid parser input and is itself canonical.

namespace detail {

inline std::string format_monomial(const Exponents& exp, const Chart& chart) {
  std::string out;
  for (std::size_t i = 0; i < exp.size(); ++i) {
    if (exp[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += chart.coord_names()[i];
    if (exp[i] > 1) out += '^' + std::to_string(exp[i]);
  }
  return out;
}

inline std::string format_polynomial(const Polynomial& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    if (first) {
      if (c < 0) {
        out += '-';
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    const std::string mono = format_monomial(t.exp, chart);
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + '*' + mono;
    }
  }
  return out;
}

}  // namespace detail

inline std::string to_string(const Expr& e, const Chart& chart) {
  const std::string num = detail::format_polynomial(e.numerator(), chart);
  if (e.is_polynomial()) return num;
  const auto& den = e.denominator();
  const bool num_simple = e.numerator().terms().size() == 1;
  const bool den_simple = den.terms().size() == 1 &&
                          detail::format_monomial(den.terms()[0].exp, chart).find('*') == std::string::npos;
  std::string out = num_simple ? num : "(" + num + ")";
  out += '/';
  out += den_simple ? detail::format_polynomial(den, chart) : "(" + detail::format_polynomial(den, chart) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := atom ('^' unary)?        exponent must reduce to an integer
//   atom    := number | identifier | '(' sum ')'

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  Expr parse() {
    Expr e = sum();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr acc = product();
    for (;;) {
      if (accept('+')) {
        acc += product();
      } else if (accept('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Expr product() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    const Expr ex = unary();
    const auto v = ex.constant_value();
    if (!v || v->get_den() != 1) throw ParseError("exponent is not an integer", at);
    if (!v->get_num().fits_sint_p()) throw ParseError("exponent out of range", at);
    const long k = v->get_num().get_si();
    if (k < 0 && base.is_zero()) throw ParseError("division by zero", at);
    return base.pow(static_cast<int>(k));
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto idx = chart_.index_of(name);
      if (!idx) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      return chart_.coordinate(*idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_point = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_point) ++frac_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    mpz_class n(digits, 10);
    mpz_class d = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) d *= 10;
    Rational q(n, d);
    q.canonicalize();
    return chart_.constant(q);
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text, const Chart& chart) { return detail::ExprParser(text, chart).parse(); }

}  // namespace tsy
