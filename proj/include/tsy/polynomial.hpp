#pragma once

// Sparse multivariate polynomials over the rationals.
//
// Terms are kept sorted in strictly descending lexicographic order of their
// exponent vectors (variable 0 most significant) with no zero coefficients,
// so two polynomials are equal iff their term lists are identical.

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsy {

using Rational = mpq_class;
using Exponents = std::vector<unsigned>;

class Polynomial {
 public:
  struct Term {
    Exponents exp;
    Rational coef;
    bool operator==(const Term& o) const { return exp == o.exp && coef == o.coef; }
  };

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.push_back({Exponents(nvars, 0u), c});
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t index) {
    assert(index < nvars);
    Exponents e(nvars, 0u);
    e[index] = 1;
    Polynomial p(nvars);
    p.terms_.push_back({std::move(e), Rational(1)});
    return p;
  }

  static Polynomial monomial(Exponents exp, const Rational& c) {
    Polynomial p(exp.size());
    if (c != 0) p.terms_.push_back({std::move(exp), c});
    return p;
  }

  // Builds from unsorted terms; like terms are merged and zeros dropped.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms) {
    std::map<Exponents, Rational, std::greater<>> acc;
    for (auto& t : terms) acc[std::move(t.exp)] += t.coef;
    Polynomial p(nvars);
    p.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (c != 0) p.terms_.push_back({e, c});
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_unit_monomial(terms_[0].exp));
  }
  Rational constant_value() const {
    assert(is_constant());
    return terms_.empty() ? Rational(0) : terms_[0].coef;
  }
  const Term& leading_term() const {
    assert(!terms_.empty());
    return terms_.front();
  }
  const Rational& leading_coefficient() const { return leading_term().coef; }

  unsigned degree(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[var]);
    return d;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) {
      unsigned s = 0;
      for (unsigned e : t.exp) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    assert(a.nvars_ == b.nvars_);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0]);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0]);
    std::map<Exponents, Rational, std::greater<>> acc;
    Exponents e(a.nvars_);
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta.exp[i] + tb.exp[i];
        acc[e] += ta.coef * tb.coef;
      }
    }
    Polynomial r(a.nvars_);
    r.terms_.reserve(acc.size());
    for (auto& [ex, c] : acc)
      if (c != 0) r.terms_.push_back({ex, c});
    return r;
  }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return Polynomial(nvars_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(nvars_, 1);
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  Polynomial derivative(std::size_t var) const {
    assert(var < nvars_);
    Polynomial r(nvars_);
    for (const auto& t : terms_) {
      if (t.exp[var] == 0) continue;
      Term d = t;
      d.coef *= t.exp[var];
      d.exp[var] -= 1;
      r.terms_.push_back(std::move(d));
    }
    // Lowering one exponent keeps the relative lex order of the survivors.
    return r;
  }

  Rational evaluate(std::span<const Rational> point) const {
    assert(point.size() == nvars_);
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coef;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < t.exp[i]; ++k) v *= point[i];
      sum += v;
    }
    return sum;
  }

  // Exponent-wise minimum over all terms (the monomial content).
  Exponents min_exponents() const {
    Exponents m(nvars_, 0u);
    if (terms_.empty()) return m;
    m = terms_[0].exp;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], t.exp[i]);
    return m;
  }

  Polynomial divide_by_monomial(const Exponents& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_)
      for (std::size_t i = 0; i < nvars_; ++i) {
        assert(t.exp[i] >= m[i]);
        t.exp[i] -= m[i];
      }
    return r;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(1 / leading_coefficient());
  }

  // Coefficients with respect to `var`, keyed by degree.
  std::map<unsigned, Polynomial> coefficients_in(std::size_t var) const {
    std::map<unsigned, std::vector<Term>> buckets;
    for (const auto& t : terms_) {
      Term c = t;
      c.exp[var] = 0;
      buckets[t.exp[var]].push_back(std::move(c));
    }
    std::map<unsigned, Polynomial> out;
    for (auto& [d, ts] : buckets) out.emplace(d, from_terms(nvars_, std::move(ts)));
    return out;
  }

  Polynomial mul_term(const Term& s) const {
    Polynomial r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Term p{t.exp, t.coef * s.coef};
      for (std::size_t i = 0; i < nvars_; ++i) p.exp[i] += s.exp[i];
      r.terms_.push_back(std::move(p));
    }
    return r;
  }

 private:
  static bool is_unit_monomial(const Exponents& e) {
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    assert(a.nvars_ == b.nvars_);
    Polynomial r(a.nvars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp > b.terms_[j].exp)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exp > a.terms_[i].exp) {
        Term t = b.terms_[j++];
        if (subtract) t.coef = -t.coef;
        r.terms_.push_back(std::move(t));
      } else {
        Rational c = a.terms_[i].coef;
        if (subtract) {
          c -= b.terms_[j].coef;
        } else {
          c += b.terms_[j].coef;
        }
        if (c != 0) r.terms_.push_back({a.terms_[i].exp, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Writes a / b into `quotient` and returns true when b divides a exactly.
inline bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto n = a.nvars();
  std::vector<Polynomial::Term> q;
  Polynomial r = a;
  const auto& lb = b.leading_term();
  while (!r.is_zero()) {
    const auto& lr = r.leading_term();
    if (!divides(lb.exp, lr.exp)) return false;
    Polynomial::Term t{Exponents(n), lr.coef / lb.coef};
    for (std::size_t i = 0; i < n; ++i) t.exp[i] = lr.exp[i] - lb.exp[i];
    r = r - b.mul_term(t);
    q.push_back(std::move(t));
  }
  // Quotient terms were produced in strictly descending order.
  quotient = Polynomial::from_terms(n, std::move(q));
  return true;
}

inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!try_divide(a, b, q)) throw std::logic_error("inexact polynomial division");
  return q;
}

namespace detail {

inline std::size_t first_shared_variable(const Polynomial& a, const Polynomial& b) {
  for (std::size_t v = 0; v < a.nvars(); ++v)
    if (a.degree(v) > 0 || b.degree(v) > 0) return v;
  return a.nvars();
}

Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b);

inline Polynomial content_in(const Polynomial& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  Polynomial g(p.nvars());
  for (const auto& [d, c] : coeffs) {
    g = g.is_zero() ? c.monic() : gcd_primitive(g, c);
    if (g.is_constant()) return Polynomial::constant(p.nvars(), 1);
  }
  return g;
}

// Pseudo-remainder of a by b viewed as univariate polynomials in `var`.
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t var) {
  const unsigned db = b.degree(var);
  auto bc = b.coefficients_in(var);
  const Polynomial lcb = bc.rbegin()->second;
  while (!a.is_zero() && a.degree(var) >= db) {
    const unsigned da = a.degree(var);
    auto ac = a.coefficients_in(var);
    const Polynomial lca = ac.rbegin()->second;
    Exponents shift(a.nvars(), 0u);
    shift[var] = da - db;
    a = lcb * a - (lca * b).mul_term({shift, Rational(1)});
  }
  return a;
}

// Arithmetic modulo a prime below 2^31.
inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  for (; e; e >>= 1, b = b * b % m)
    if (e & 1) r = r * b % m;
  return r;
}

inline std::optional<std::uint64_t> rational_mod(const Rational& q, std::uint64_t m) {
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), m);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), m);
  return num * pow_mod(den, m - 2, m) % m;
}

// p with every variable except `var` set from `pt`, reduced mod m and dense by
// degree in var; nullopt when m divides a coefficient denominator.
inline std::optional<std::vector<std::uint64_t>> modular_image(const Polynomial& p, std::size_t var,
                                                               const std::vector<std::uint64_t>& pt, std::uint64_t m) {
  std::vector<std::uint64_t> out(p.degree(var) + 1, 0);
  for (const auto& t : p.terms()) {
    const auto c = rational_mod(t.coef, m);
    if (!c) return std::nullopt;
    std::uint64_t v = *c;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (i != var) v = v * pow_mod(pt[i], t.exp[i], m) % m;
    out[t.exp[var]] = (out[t.exp[var]] + v) % m;
  }
  return out;
}

inline std::size_t modular_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, std::uint64_t m) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = pow_mod(b.back(), m - 2, m);
    while (a.size() >= b.size()) {
      const std::uint64_t f = a.back() * inv % m;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = (a[i + shift] + m - f * b[i] % m) % m;
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Certificate that gcd(a, b) is constant: for each variable, an evaluation of
// the others modulo a prime that keeps both leading coefficients nonzero and
// leaves coprime univariate images. An image gcd is never smaller than the
// image of the true gcd, whose degree is preserved under these conditions.
inline bool certainly_coprime(const Polynomial& a, const Polynomial& b) {
  static constexpr std::uint64_t primes[] = {2147483629u, 2147483587u, 2147483579u};
  const std::size_t n = a.nvars();
  for (std::size_t v = 0; v < n; ++v) {
    if (a.degree(v) == 0 || b.degree(v) == 0) continue;
    bool settled = false;
    for (std::size_t attempt = 0; attempt < 3 && !settled; ++attempt) {
      const std::uint64_t m = primes[attempt];
      std::vector<std::uint64_t> pt(n);
      for (std::size_t i = 0; i < n; ++i) pt[i] = (1000003u * (i + 1) + 7919u * attempt) % m;
      auto ia = modular_image(a, v, pt, m), ib = modular_image(b, v, pt, m);
      if (!ia || !ib || ia->back() == 0 || ib->back() == 0) continue;
      if (modular_gcd_degree(std::move(*ia), std::move(*ib), m) == 0) settled = true;
    }
    if (!settled) return false;
  }
  return true;
}

inline Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  return divide_exact(p, content_in(p, var));
}

// Monic gcd; both inputs nonzero.
inline Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b) {
  const auto n = a.nvars();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(n, 1);

  // Split off the monomial content first; it is common and cheap.
  Exponents ma = a.min_exponents(), mb = b.min_exponents();
  Exponents m(n);
  bool has_monomial = false;
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = std::min(ma[i], mb[i]);
    has_monomial |= ma[i] > 0 || mb[i] > 0;
  }
  if (has_monomial) {
    Polynomial ar = a.divide_by_monomial(ma), br = b.divide_by_monomial(mb);
    Polynomial rest = (ar.is_constant() || br.is_constant()) ? Polynomial::constant(n, 1) : gcd_primitive(ar, br);
    return rest.mul_term({m, Rational(1)}).monic();
  }

  Polynomial q;
  if (a.terms().size() >= b.terms().size() && try_divide(a, b, q)) return b.monic();
  if (b.terms().size() >= a.terms().size() && try_divide(b, a, q)) return a.monic();

  if (certainly_coprime(a, b)) return Polynomial::constant(n, 1);

  const std::size_t v = first_shared_variable(a, b);
  if (a.degree(v) == 0) return gcd_primitive(a, content_in(b, v));
  if (b.degree(v) == 0) return gcd_primitive(content_in(a, v), b);

  const Polynomial ca = content_in(a, v), cb = content_in(b, v);
  const Polynomial c = gcd_primitive(ca, cb);
  Polynomial pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  Polynomial g(n);
  for (;;) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree(v) == 0) {
      g = Polynomial::constant(n, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, v).monic();
  }
  if (!g.is_constant()) g = primitive_part(g, v);
  return (c * g).monic();
}

}  // namespace detail

// Greatest common divisor, normalized to leading coefficient 1 (0 if both are 0).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return a;
  return detail::gcd_primitive(a, b);
}

}  // namespace tsy
