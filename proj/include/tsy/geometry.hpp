#pragma once

// Frame-based Riemannian machinery: Lie brackets, the Levi-Civita connection
// from Koszul's formula, covariant and Lie derivatives, exterior derivative.

#include <tsy/expr.hpp>
#include <tsy/tensor.hpp>

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsy {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Square matrix of expressions, row-major.
class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(std::size_t n, std::size_t nvars) : n_(n), data_(n * n, Expr(nvars)) {}

  static ExprMatrix identity(std::size_t n, std::size_t nvars) {
    ExprMatrix m(n, nvars);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr::constant(nvars, 1);
    return m;
  }

  std::size_t size() const { return n_; }
  Expr& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Expr& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  bool operator==(const ExprMatrix&) const = default;

  friend ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
    const std::size_t n = a.n_;
    ExprMatrix r(n, n == 0 ? 0 : a(0, 0).nvars());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Expr> data_;
};

// Gauss-Jordan over the field of rational functions. Returns the
// determinant and, when it is not identically zero, the inverse.
inline std::pair<Expr, std::optional<ExprMatrix>> determinant_and_inverse(const ExprMatrix& m) {
  const std::size_t n = m.size();
  const std::size_t nv = n == 0 ? 0 : m(0, 0).nvars();
  ExprMatrix a = m;
  ExprMatrix inv = ExprMatrix::identity(n, nv);
  Expr det = Expr::constant(nv, 1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return {Expr(nv), std::nullopt};
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
      det = -det;
    }
    const Expr p = a(col, col);
    det *= p;
    const Expr pinv = p.reciprocal();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= pinv;
      inv(col, j) *= pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Expr f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(col, j).is_zero()) a(r, j) -= f * a(col, j);
        if (!inv(col, j).is_zero()) inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return {det, inv};
}

// [X, Y]^j = sum_i (X^i d_i Y^j - Y^i d_i X^j), coordinate basis.
inline VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim()) throw GeometryError("lie_bracket: vector fields live on different charts");
  const std::size_t n = x.dim();
  VectorField out{std::vector<Expr>(n, n == 0 ? Expr() : Expr(x.components[0].nvars()))};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!x.components[i].is_zero() && !y.components[j].is_zero())
        out.components[j] += x.components[i] * y.components[j].derivative(i);
      if (!y.components[i].is_zero() && !x.components[j].is_zero())
        out.components[j] -= y.components[i] * x.components[j].derivative(i);
    }
  }
  return out;
}

// A chart with a frame e_1..e_n and the metric components G_ij = g(e_i, e_j).
//
// Construction checks the frame and metric, then eagerly derives the inverse
// frame matrix, the inverse metric, the bracket structure functions
// [e_i, e_j] = sum_k c_ij^k e_k and the connection nabla_{e_i} e_j.
class FrameManifold {
 public:
  FrameManifold(Chart chart, std::vector<VectorField> frame, ExprMatrix metric)
      : chart_(std::move(chart)), frame_(std::move(frame)), metric_(std::move(metric)) {
    const std::size_t n = chart_.dim();
    const std::size_t nv = n;
    if (frame_.size() != n) throw GeometryError("frame must have " + std::to_string(n) + " vector fields");
    for (const auto& e : frame_)
      if (e.dim() != n) throw GeometryError("frame vector has the wrong number of components");
    if (metric_.size() != n) throw GeometryError("metric must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!metric_.is_symmetric()) throw GeometryError("metric is not symmetric");

    frame_matrix_ = ExprMatrix(n, nv);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) frame_matrix_(j, i) = frame_[i].components[j];
    auto [fdet, finv] = determinant_and_inverse(frame_matrix_);
    if (!finv) throw GeometryError("frame vector fields are linearly dependent");
    frame_det_ = fdet;
    frame_inverse_ = std::move(*finv);

    auto [gdet, ginv] = determinant_and_inverse(metric_);
    if (!ginv) throw GeometryError("metric is degenerate (determinant identically zero)");
    metric_det_ = gdet;
    metric_inverse_ = std::move(*ginv);

    structure_ = Array3(n, nv);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        FrameVector b = to_frame(lie_bracket(frame_[i], frame_[j]));
        for (std::size_t k = 0; k < n; ++k) {
          structure_(i, j, k) = b(k);
          structure_(j, i, k) = -b(k);
        }
      }

    connection_ = compute_koszul();
  }

  const Chart& chart() const { return chart_; }
  std::size_t dim() const { return chart_.dim(); }
  std::size_t nvars() const { return chart_.dim(); }
  const std::vector<VectorField>& frame() const { return frame_; }
  const ExprMatrix& metric() const { return metric_; }
  const ExprMatrix& metric_inverse() const { return metric_inverse_; }
  const Expr& metric_determinant() const { return metric_det_; }
  const Expr& frame_determinant() const { return frame_det_; }

  // Column i holds the coordinate components of e_i.
  const ExprMatrix& frame_matrix() const { return frame_matrix_; }
  const ExprMatrix& frame_matrix_inverse() const { return frame_inverse_; }

  Expr zero() const { return chart_.zero(); }
  Expr constant(const Rational& c) const { return chart_.constant(c); }
  FrameVector zero_vector() const { return FrameVector(dim(), nvars()); }
  FrameVector basis(std::size_t i) const { return basis_vector(dim(), nvars(), i); }

  // c_ij^k with [e_i, e_j] = sum_k c_ij^k e_k.
  const Expr& structure(std::size_t i, std::size_t j, std::size_t k) const { return structure_(i, j, k); }
  FrameVector bracket_of_basis(std::size_t i, std::size_t j) const {
    FrameVector v = zero_vector();
    for (std::size_t k = 0; k < dim(); ++k) v(k) = structure_(i, j, k);
    return v;
  }

  // Gamma^k_ij with nabla_{e_i} e_j = sum_k Gamma^k_ij e_k.
  const Expr& christoffel(std::size_t i, std::size_t j, std::size_t k) const { return connection_(i, j, k); }
  FrameVector nabla_basis(std::size_t i, std::size_t j) const {
    FrameVector v = zero_vector();
    for (std::size_t k = 0; k < dim(); ++k) v(k) = connection_(i, j, k);
    return v;
  }

  FrameVector to_frame(const VectorField& x) const {
    if (x.dim() != dim()) throw GeometryError("vector field has the wrong number of components");
    FrameVector v = zero_vector();
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (!frame_inverse_(i, j).is_zero() && !x.components[j].is_zero())
          v(i) += frame_inverse_(i, j) * x.components[j];
    return v;
  }

  VectorField to_coordinates(const FrameVector& v) const {
    VectorField x{std::vector<Expr>(dim(), zero())};
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t i = 0; i < dim(); ++i)
        if (!frame_matrix_(j, i).is_zero() && !v(i).is_zero()) x.components[j] += frame_matrix_(j, i) * v(i);
    return x;
  }

  // e_i(f)
  Expr derivative_along_basis(std::size_t i, const Expr& f) const {
    Expr out = zero();
    if (f.constant_value()) return out;
    for (std::size_t j = 0; j < dim(); ++j)
      if (!frame_matrix_(j, i).is_zero()) out += frame_matrix_(j, i) * f.derivative(j);
    return out;
  }

  // X(f) for a frame vector X.
  Expr derivative_along(const FrameVector& x, const Expr& f) const {
    Expr out = zero();
    if (f.constant_value()) return out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (!x(i).is_zero()) out += x(i) * derivative_along_basis(i, f);
    return out;
  }

  Expr inner(const FrameVector& x, const FrameVector& y) const {
    Expr out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x(i).is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (!y(j).is_zero() && !metric_(i, j).is_zero()) out += x(i) * y(j) * metric_(i, j);
    }
    return out;
  }

  // Lowers an index: the one-form g(X, .).
  OneForm flat(const FrameVector& x) const {
    OneForm w(dim(), nvars());
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t i = 0; i < dim(); ++i)
        if (!x(i).is_zero() && !metric_(i, j).is_zero()) w(j) += x(i) * metric_(i, j);
    return w;
  }

  FrameVector sharp(const OneForm& w) const {
    FrameVector x = zero_vector();
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (!w(j).is_zero() && !metric_inverse_(i, j).is_zero()) x(i) += metric_inverse_(i, j) * w(j);
    return x;
  }

  Tensor02 metric_tensor() const {
    Tensor02 g(dim(), nvars());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) g(i, j) = metric_(i, j);
    return g;
  }

  // [X, Y] for frame vectors.
  FrameVector bracket(const FrameVector& x, const FrameVector& y) const {
    FrameVector out = zero_vector();
    for (std::size_t k = 0; k < dim(); ++k) out(k) = derivative_along(x, y(k)) - derivative_along(y, x(k));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x(i).is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y(j).is_zero() || i == j) continue;
        const Expr xy = x(i) * y(j);
        for (std::size_t k = 0; k < dim(); ++k)
          if (!structure_(i, j, k).is_zero()) out(k) += xy * structure_(i, j, k);
      }
    }
    return out;
  }

  // nabla_X Y, by function-linearity in X and the Leibniz rule in Y.
  FrameVector covariant_derivative(const FrameVector& x, const FrameVector& y) const {
    FrameVector out = zero_vector();
    for (std::size_t k = 0; k < dim(); ++k) out(k) = derivative_along(x, y(k));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x(i).is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y(j).is_zero()) continue;
        const Expr xy = x(i) * y(j);
        for (std::size_t k = 0; k < dim(); ++k)
          if (!connection_(i, j, k).is_zero()) out(k) += xy * connection_(i, j, k);
      }
    }
    return out;
  }

  // Positive-definiteness cannot be decided symbolically; this samples
  // admissible rational points and checks the leading principal minors.
  bool spot_check_positive_definite(std::size_t samples = 8, unsigned seed = 12345) const {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    std::size_t done = 0;
    for (std::size_t attempt = 0; attempt < samples * 50 && done < samples; ++attempt) {
      std::vector<Rational> pt(dim());
      for (auto& p : pt) {
        p = Rational(num(rng), den(rng));
        p.canonicalize();
      }
      if (!chart_.admits(pt) || !admits_frame(pt)) continue;
      ++done;
      std::vector<std::vector<Rational>> a(dim(), std::vector<Rational>(dim()));
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) a[i][j] = metric_(i, j).evaluate(pt);
      for (std::size_t k = 1; k <= dim(); ++k)
        if (leading_minor(a, k) <= 0) return false;
    }
    return done > 0;
  }

  bool admits_frame(std::span<const Rational> pt) const {
    auto nonzero = [&](const Expr& e) {
      return e.denominator().evaluate(pt) != 0 && e.numerator().evaluate(pt) != 0;
    };
    if (!nonzero(frame_det_) || !nonzero(metric_det_)) return false;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) {
        if (frame_inverse_(i, j).denominator().evaluate(pt) == 0) return false;
        if (metric_(i, j).denominator().evaluate(pt) == 0) return false;
        if (metric_inverse_(i, j).denominator().evaluate(pt) == 0) return false;
      }
    return true;
  }

 private:
  static Rational leading_minor(std::vector<std::vector<Rational>> a, std::size_t k) {
    Rational det = 1;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      while (p < k && a[p][c] == 0) ++p;
      if (p == k) return 0;
      if (p != c) {
        std::swap(a[p], a[c]);
        det = -det;
      }
      det *= a[c][c];
      for (std::size_t r = c + 1; r < k; ++r) {
        const Rational f = a[r][c] / a[c][c];
        for (std::size_t j = c; j < k; ++j) a[r][j] -= f * a[c][j];
      }
    }
    return det;
  }

  // 2 g(nabla_X Y, Z) = X g(Y,Z) + Y g(Z,X) - Z g(X,Y)
  //                     - g(X,[Y,Z]) - g(Y,[X,Z]) + g(Z,[X,Y])
  // on frame triples, then raised with the inverse metric.
  Array3 compute_koszul() const {
    const std::size_t n = dim();
    auto g_bracket = [&](std::size_t a, std::size_t b, std::size_t c) {
      // g(e_a, [e_b, e_c])
      Expr s = zero();
      for (std::size_t k = 0; k < n; ++k)
        if (!structure_(b, c, k).is_zero() && !metric_(a, k).is_zero()) s += metric_(a, k) * structure_(b, c, k);
      return s;
    };
    Array3 lowered(n, nvars());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Expr twice = derivative_along_basis(i, metric_(j, k)) + derivative_along_basis(j, metric_(k, i)) -
                       derivative_along_basis(k, metric_(i, j)) - g_bracket(i, j, k) - g_bracket(j, i, k) +
                       g_bracket(k, i, j);
          lowered(i, j, k) = twice.scaled(Rational(1, 2));
        }
    Array3 gamma(n, nvars());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l)
            if (!metric_inverse_(k, l).is_zero() && !lowered(i, j, l).is_zero())
              gamma(i, j, k) += metric_inverse_(k, l) * lowered(i, j, l);
    return gamma;
  }

  Chart chart_;
  std::vector<VectorField> frame_;
  ExprMatrix metric_;
  ExprMatrix metric_inverse_;
  Expr metric_det_;
  ExprMatrix frame_matrix_;
  ExprMatrix frame_inverse_;
  Expr frame_det_;
  Array3 structure_;
  Array3 connection_;
};

// Connection coefficients Gamma^k_ij, indexed (i, j, k).
inline Array3 koszul_connection(const FrameManifold& m) {
  Array3 gamma(m.dim(), m.nvars());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      for (std::size_t k = 0; k < m.dim(); ++k) gamma(i, j, k) = m.christoffel(i, j, k);
  return gamma;
}

inline FrameVector covariant_derivative(const FrameManifold& m, const FrameVector& x, const FrameVector& y) {
  return m.covariant_derivative(x, y);
}

// (nabla_X T)(Y, Z) = X T(Y,Z) - T(nabla_X Y, Z) - T(Y, nabla_X Z)
inline Tensor02 covariant_derivative(const FrameManifold& m, const FrameVector& x, const Tensor02& t) {
  const std::size_t n = m.dim();
  std::vector<FrameVector> nabla(n);
  for (std::size_t i = 0; i < n; ++i) nabla[i] = m.covariant_derivative(x, m.basis(i));
  Tensor02 out(n, m.nvars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr v = m.derivative_along(x, t(i, j));
      for (std::size_t k = 0; k < n; ++k) {
        if (!nabla[i](k).is_zero()) v -= nabla[i](k) * t(k, j);
        if (!nabla[j](k).is_zero()) v -= nabla[j](k) * t(i, k);
      }
      out(i, j) = v;
    }
  return out;
}

// (nabla_X T) Y = nabla_X (T Y) - T(nabla_X Y)
inline Tensor11 covariant_derivative(const FrameManifold& m, const FrameVector& x, const Tensor11& t) {
  const std::size_t n = m.dim();
  Tensor11 out(n, m.nvars());
  for (std::size_t i = 0; i < n; ++i) {
    const FrameVector ei = m.basis(i);
    const FrameVector v = m.covariant_derivative(x, apply(t, ei)) - apply(t, m.covariant_derivative(x, ei));
    for (std::size_t j = 0; j < n; ++j) out(i, j) = v(j);
  }
  return out;
}

// (L_V g)(X, Y) = V g(X,Y) - g([V,X], Y) - g(X, [V,Y])
inline Tensor02 lie_derivative_metric(const FrameManifold& m, const FrameVector& v) {
  const std::size_t n = m.dim();
  std::vector<FrameVector> br(n);
  for (std::size_t i = 0; i < n; ++i) br[i] = m.bracket(v, m.basis(i));
  Tensor02 out(n, m.nvars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Expr e = m.derivative_along(v, m.metric()(i, j)) - m.inner(br[i], m.basis(j)) - m.inner(m.basis(i), br[j]);
      out(i, j) = e;
      out(j, i) = e;
    }
  return out;
}

// dw(X, Y) = X w(Y) - Y w(X) - w([X, Y])
inline Tensor02 exterior_derivative(const FrameManifold& m, const OneForm& w) {
  const std::size_t n = m.dim();
  Tensor02 out(n, m.nvars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Expr e = m.derivative_along_basis(i, w(j)) - m.derivative_along_basis(j, w(i)) - apply(w, m.bracket_of_basis(i, j));
      out(i, j) = e;
      out(j, i) = -e;
    }
  return out;
}

}  // namespace tsy
