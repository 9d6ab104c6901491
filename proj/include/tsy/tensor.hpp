#pragma once

// Frame-component storage for vectors, covectors and tensors.
//
// Everything here is expressed in a frame e_1..e_n rather than in the
// coordinate basis. Index conventions:
//   FrameVector  X            X = sum_i X[i] e_i
//   OneForm      w            w[i] = w(e_i)
//   Tensor02     T(i, j)      = T(e_i, e_j)
//   Tensor11     T(i, j)      = j-th frame component of T(e_i)
//   Tensor13     T(i, j, k, l) = l-th frame component of T(e_i, e_j) e_k

#include <tsy/expr.hpp>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tsy {

template <class Tag, std::size_t Rank>
class FrameArray {
 public:
  FrameArray() = default;
  FrameArray(std::size_t dim, std::size_t nvars) : dim_(dim), data_(count(dim), Expr(nvars)) {}

  std::size_t dim() const { return dim_; }
  static constexpr std::size_t rank() { return Rank; }

  template <class... I>
  Expr& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  const Expr& operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  const std::vector<Expr>& flat() const { return data_; }
  std::vector<Expr>& flat() { return data_; }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

  bool operator==(const FrameArray& o) const { return dim_ == o.dim_ && data_ == o.data_; }

  friend FrameArray operator+(FrameArray a, const FrameArray& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend FrameArray operator-(FrameArray a, const FrameArray& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend FrameArray operator*(const Expr& f, FrameArray a) {
    for (auto& e : a.data_) e *= f;
    return a;
  }
  FrameArray operator-() const {
    FrameArray r = *this;
    for (auto& e : r.data_) e = -e;
    return r;
  }

 private:
  static std::size_t count(std::size_t dim) {
    std::size_t c = 1;
    for (std::size_t r = 0; r < Rank; ++r) c *= dim;
    return c;
  }
  std::size_t offset(std::array<std::size_t, Rank> idx) const {
    std::size_t off = 0;
    for (std::size_t r = 0; r < Rank; ++r) {
      if (idx[r] >= dim_) throw std::out_of_range("frame index out of range");
      off = off * dim_ + idx[r];
    }
    return off;
  }
  static void check_same(const FrameArray& a, const FrameArray& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("frame tensors of different dimension");
  }

  std::size_t dim_ = 0;
  std::vector<Expr> data_;
};

struct FrameVectorTag;
struct OneFormTag;
struct Tensor02Tag;
struct Tensor11Tag;
struct Tensor13Tag;
struct Array3Tag;

using FrameVector = FrameArray<FrameVectorTag, 1>;
using OneForm = FrameArray<OneFormTag, 1>;
using Tensor02 = FrameArray<Tensor02Tag, 2>;
using Tensor11 = FrameArray<Tensor11Tag, 2>;
using Tensor13 = FrameArray<Tensor13Tag, 4>;
// Plain 3-index arrays, e.g. (X, Y, Z) -> (A(xi, X) . S)(Y, Z).
using Array3 = FrameArray<Array3Tag, 3>;

// A vector field in the coordinate basis: X = sum_j X[j] d/dx_j.
struct VectorField {
  std::vector<Expr> components;

  std::size_t dim() const { return components.size(); }
  bool is_zero() const {
    for (const auto& c : components)
      if (!c.is_zero()) return false;
    return true;
  }
  bool operator==(const VectorField&) const = default;
};

inline FrameVector basis_vector(std::size_t dim, std::size_t nvars, std::size_t i) {
  FrameVector v(dim, nvars);
  v(i) = Expr::constant(nvars, 1);
  return v;
}

// Tensor13 image T(X, Y)Z for arbitrary frame vectors, by multilinearity.
inline FrameVector apply(const Tensor13& t, const FrameVector& x, const FrameVector& y, const FrameVector& z) {
  const std::size_t n = t.dim();
  const std::size_t nv = t.flat().empty() ? 0 : t.flat()[0].nvars();
  FrameVector out(n, nv);
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y(j).is_zero()) continue;
      const Expr xy = x(i) * y(j);
      for (std::size_t k = 0; k < n; ++k) {
        if (z(k).is_zero()) continue;
        const Expr w = xy * z(k);
        for (std::size_t l = 0; l < n; ++l)
          if (!t(i, j, k, l).is_zero()) out(l) += w * t(i, j, k, l);
      }
    }
  }
  return out;
}

inline Expr apply(const Tensor02& t, const FrameVector& x, const FrameVector& y) {
  const std::size_t n = t.dim();
  Expr out(x.flat().empty() ? 0 : x(0).nvars());
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!y(j).is_zero() && !t(i, j).is_zero()) out += x(i) * y(j) * t(i, j);
  }
  return out;
}

inline FrameVector apply(const Tensor11& t, const FrameVector& x) {
  const std::size_t n = t.dim();
  FrameVector out(n, x.flat().empty() ? 0 : x(0).nvars());
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!t(i, j).is_zero()) out(j) += x(i) * t(i, j);
  }
  return out;
}

inline Expr apply(const OneForm& w, const FrameVector& x) {
  Expr out(x.flat().empty() ? 0 : x(0).nvars());
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!x(i).is_zero() && !w(i).is_zero()) out += w(i) * x(i);
  return out;
}

inline Tensor02 outer(const OneForm& a, const OneForm& b) {
  const std::size_t n = a.dim();
  Tensor02 t(n, n == 0 ? 0 : a(0).nvars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i) * b(j);
  return t;
}

inline bool is_symmetric(const Tensor02& t) {
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = i + 1; j < t.dim(); ++j)
      if (!(t(i, j) == t(j, i))) return false;
  return true;
}

}  // namespace tsy
