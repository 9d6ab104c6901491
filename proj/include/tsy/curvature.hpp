#pragma once

// Riemann curvature and the curvature-type tensors built from it.
//
// Conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
// S(X,Y) = trace of W -> R(W,X)Y, g(QX,Y) = S(X,Y), r = trace Q. With these a
// space of constant sectional curvature k has S = (n-1) k g.

#include <tsy/geometry.hpp>

#include <cstddef>
#include <stdexcept>

namespace tsy {

inline Tensor13 riemann(const FrameManifold& m) {
  const std::size_t n = m.dim();
  Tensor13 r(n, m.nvars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Expr v = m.derivative_along_basis(i, m.christoffel(j, k, l)) -
                   m.derivative_along_basis(j, m.christoffel(i, k, l));
          for (std::size_t p = 0; p < n; ++p) {
            if (!m.christoffel(j, k, p).is_zero() && !m.christoffel(i, p, l).is_zero())
              v += m.christoffel(j, k, p) * m.christoffel(i, p, l);
            if (!m.christoffel(i, k, p).is_zero() && !m.christoffel(j, p, l).is_zero())
              v -= m.christoffel(i, k, p) * m.christoffel(j, p, l);
            if (!m.structure(i, j, p).is_zero() && !m.christoffel(p, k, l).is_zero())
              v -= m.structure(i, j, p) * m.christoffel(p, k, l);
          }
          r(i, j, k, l) = v;
          r(j, i, k, l) = -v;
        }
  return r;
}

// Everything downstream reuses R, S, Q and r; compute them once.
struct Curvature {
  std::size_t dim = 0;
  ExprMatrix metric;
  ExprMatrix metric_inverse;
  Tensor13 riemann;
  Tensor02 ricci;
  Tensor11 ricci_operator;
  Expr scalar;
};

inline Tensor02 ricci_from(const Tensor13& r) {
  const std::size_t n = r.dim();
  Tensor02 s(n, r.flat().empty() ? 0 : r.flat()[0].nvars());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < n; ++i)
        if (!r(i, a, b, i).is_zero()) s(a, b) += r(i, a, b, i);
  return s;
}

inline Curvature compute_curvature(const FrameManifold& m) {
  const std::size_t n = m.dim();
  Curvature c;
  c.dim = n;
  c.metric = m.metric();
  c.metric_inverse = m.metric_inverse();
  c.riemann = riemann(m);
  c.ricci = ricci_from(c.riemann);
  c.ricci_operator = Tensor11(n, m.nvars());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t b = 0; b < n; ++b)
        if (!c.ricci(a, b).is_zero() && !m.metric_inverse()(b, l).is_zero())
          c.ricci_operator(a, l) += c.ricci(a, b) * m.metric_inverse()(b, l);
  c.scalar = m.zero();
  for (std::size_t a = 0; a < n; ++a) c.scalar += c.ricci_operator(a, a);
  return c;
}

inline Tensor02 ricci(const FrameManifold& m) { return compute_curvature(m).ricci; }
inline Tensor11 ricci_operator(const FrameManifold& m) { return compute_curvature(m).ricci_operator; }
inline Expr scalar_curvature(const FrameManifold& m) { return compute_curvature(m).scalar; }

namespace detail {

// Builds T(i,j,k,l) = base * R + f(i,j,k,l) term by term.
template <class F>
Tensor13 combine(const Curvature& c, const Rational& r_coeff, F&& extra) {
  const std::size_t n = c.dim;
  Tensor13 out = c.riemann;
  for (auto& e : out.flat()) e = e.scaled(r_coeff);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i, j, k, l) += extra(i, j, k, l);
  return out;
}

}  // namespace detail

// P = R - 1/(n-1) [g(QY,Z) X - g(QX,Z) Y]
inline Tensor13 projective(const Curvature& c) {
  const std::size_t n = c.dim;
  if (n < 2) throw std::invalid_argument("projective curvature needs n >= 2");
  const Expr zero = c.scalar - c.scalar;
  const Rational f(1, static_cast<long>(n - 1));
  return detail::combine(c, 1, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Expr t = zero;
    if (i == l) t += c.ricci(j, k);
    if (j == l) t -= c.ricci(i, k);
    return t.scaled(-f);
  });
}

// C~ = R - r/(n(n-1)) [g(Y,Z) X - g(X,Z) Y]
inline Tensor13 concircular(const Curvature& c) {
  const std::size_t n = c.dim;
  if (n < 2) throw std::invalid_argument("concircular curvature needs n >= 2");
  const Expr zero = c.scalar - c.scalar;
  const Expr f = c.scalar.scaled(Rational(1, static_cast<long>(n * (n - 1))));
  return detail::combine(c, 1, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Expr t = zero;
    if (i == l) t += c.metric(j, k);
    if (j == l) t -= c.metric(i, k);
    return t.is_zero() ? t : -(f * t);
  });
}

// H = R - 1/(n-2) [g(Y,Z) QX - g(X,Z) QY + S(Y,Z) X - S(X,Z) Y]
inline Tensor13 conharmonic(const Curvature& c) {
  const std::size_t n = c.dim;
  if (n < 3) throw std::invalid_argument("conharmonic curvature needs n >= 3");
  const Rational f(1, static_cast<long>(n - 2));
  return detail::combine(c, 1, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Expr t = c.metric(j, k) * c.ricci_operator(i, l) - c.metric(i, k) * c.ricci_operator(j, l);
    if (i == l) t += c.ricci(j, k);
    if (j == l) t -= c.ricci(i, k);
    return t.scaled(-f);
  });
}

// C* = a R + b [S(Y,Z) X - S(X,Z) Y + g(Y,Z) QX - g(X,Z) QY]
//      - r/n [a/(n-1) + 2b] [g(Y,Z) X - g(X,Z) Y]
inline Tensor13 quasi_conformal(const Curvature& c, const Rational& a, const Rational& b) {
  const std::size_t n = c.dim;
  if (n < 2) throw std::invalid_argument("quasi-conformal curvature needs n >= 2");
  const Rational nn(static_cast<long>(n));
  const Expr f = c.scalar.scaled((a / Rational(static_cast<long>(n - 1)) + 2 * b) / nn);
  return detail::combine(c, a, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Expr t = c.metric(j, k) * c.ricci_operator(i, l) - c.metric(i, k) * c.ricci_operator(j, l);
    Expr gx = c.scalar - c.scalar;
    if (i == l) {
      t += c.ricci(j, k);
      gx += c.metric(j, k);
    }
    if (j == l) {
      t -= c.ricci(i, k);
      gx -= c.metric(i, k);
    }
    return t.scaled(b) - f * gx;
  });
}

// C = R - 1/(n-2) [S(Y,Z) X - S(X,Z) Y + g(Y,Z) QX - g(X,Z) QY]
//     + r/((n-1)(n-2)) [g(Y,Z) X - g(X,Z) Y]
inline Tensor13 conformal(const Curvature& c) {
  const std::size_t n = c.dim;
  if (n < 3) throw std::invalid_argument("conformal curvature needs n >= 3");
  const Rational f(1, static_cast<long>(n - 2));
  const Expr h = c.scalar.scaled(Rational(1, static_cast<long>((n - 1) * (n - 2))));
  return detail::combine(c, 1, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Expr t = c.metric(j, k) * c.ricci_operator(i, l) - c.metric(i, k) * c.ricci_operator(j, l);
    Expr gx = c.scalar - c.scalar;
    if (i == l) {
      t += c.ricci(j, k);
      gx += c.metric(j, k);
    }
    if (j == l) {
      t -= c.ricci(i, k);
      gx -= c.metric(i, k);
    }
    return h * gx - t.scaled(f);
  });
}

// W2 = R + 1/(n-1) [g(X,Z) QY - g(Y,Z) QX]
inline Tensor13 w2(const Curvature& c) {
  const std::size_t n = c.dim;
  if (n < 2) throw std::invalid_argument("W2 curvature needs n >= 2");
  const Rational f(1, static_cast<long>(n - 1));
  return detail::combine(c, 1, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Expr t = c.metric(i, k) * c.ricci_operator(j, l) - c.metric(j, k) * c.ricci_operator(i, l);
    return t.scaled(f);
  });
}

// (A(xi, X) . S)(Y, Z) = S(A(xi,X)Y, Z) + S(Y, A(xi,X)Z), indexed (X, Y, Z).
// The conventional derivation differs by an overall minus sign, which does not
// change where the action vanishes.
inline Array3 derivation_action(const Tensor13& a, const Tensor02& s, const FrameVector& xi) {
  const std::size_t n = a.dim();
  const std::size_t nv = s.flat().empty() ? 0 : s.flat()[0].nvars();
  Array3 out(n, nv);
  for (std::size_t x = 0; x < n; ++x) {
    const FrameVector ex = basis_vector(n, nv, x);
    std::vector<FrameVector> img(n);
    for (std::size_t y = 0; y < n; ++y) img[y] = apply(a, xi, ex, basis_vector(n, nv, y));
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Expr v(nv);
        for (std::size_t p = 0; p < n; ++p) {
          if (!img[y](p).is_zero()) v += img[y](p) * s(p, z);
          if (!img[z](p).is_zero()) v += img[z](p) * s(y, p);
        }
        out(x, y, z) = v;
      }
  }
  return out;
}

}  // namespace tsy
