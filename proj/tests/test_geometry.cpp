#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace fx;

TEST_CASE("hyperbolic frame: brackets", "[geometry]") {
  const FrameManifold m = hyperbolic();
  CHECK(m.bracket_of_basis(0, 1).is_zero());
  CHECK(m.bracket_of_basis(1, 2) == -m.basis(1));
  CHECK(m.bracket_of_basis(0, 2) == -m.basis(0));
}

TEST_CASE("hyperbolic frame: connection", "[geometry]") {
  const FrameManifold m = hyperbolic();
  auto nabla = [&](int i, int j) { return tsy::covariant_derivative(m, m.basis(i), m.basis(j)); };
  CHECK(nabla(0, 2) == -m.basis(0));
  CHECK(nabla(1, 2) == -m.basis(1));
  CHECK(nabla(2, 2).is_zero());
  CHECK(nabla(0, 0) == m.basis(2));
  CHECK(nabla(1, 1) == m.basis(2));
  CHECK(nabla(0, 1).is_zero());
  CHECK(nabla(1, 0).is_zero());
  CHECK(nabla(2, 0).is_zero());
  CHECK(nabla(2, 1).is_zero());
}

TEST_CASE("flat frame has a vanishing connection", "[geometry]") {
  const FrameManifold m = flat3();
  CHECK(tsy::koszul_connection(m).is_zero());
}

namespace {

void check_connection_axioms(const FrameManifold& m) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const FrameVector ei = m.basis(i), ej = m.basis(j);
      const FrameVector torsion = m.covariant_derivative(ei, ej) - m.covariant_derivative(ej, ei) - m.bracket(ei, ej);
      CHECK(torsion.is_zero());
      for (std::size_t k = 0; k < n; ++k) {
        const FrameVector ek = m.basis(k);
        const Expr r = m.derivative_along(ei, m.inner(ej, ek)) - m.inner(m.covariant_derivative(ei, ej), ek) -
                       m.inner(ej, m.covariant_derivative(ei, ek));
        CHECK(r.is_zero());
      }
    }
}

}  // namespace

TEST_CASE("connection is torsion-free and metric on the fixtures", "[geometry]") {
  check_connection_axioms(hyperbolic());
  check_connection_axioms(flat3());
  check_connection_axioms(heisenberg());
  check_connection_axioms(sphere(3));
}

TEST_CASE("coordinate frame: Koszul matches the classical Christoffel symbols", "[geometry]") {
  const std::vector<std::vector<std::string>> gs = {{"1 + x^2", "y", "0"}, {"y", "2", "x"}, {"0", "x", "1 + z^2"}};
  const FrameManifold m = frame_manifold({"x", "y", "z"}, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}, {}, gs);
  const Chart& c = m.chart();
  tsy::ExprMatrix g(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = P(c, gs[i][j]);
  const auto inv = tsy::determinant_and_inverse(g).second.value();
  // Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Expr s = c.zero();
        for (int l = 0; l < 3; ++l)
          s += inv(k, l) * (g(j, l).derivative(i) + g(i, l).derivative(j) - g(i, j).derivative(l));
        CHECK(m.christoffel(i, j, k) == s.scaled(Rational(1, 2)));
      }
  check_connection_axioms(m);
}

TEST_CASE("Lie derivative of the metric", "[geometry]") {
  const FrameManifold flat = flat3();
  CHECK(tsy::lie_derivative_metric(flat, flat.basis(0)).is_zero());
  // Rotation generator -y d/dx + x d/dy is Killing.
  CHECK(tsy::lie_derivative_metric(flat, vec(flat, {"-y", "x", "0"})).is_zero());
  // Dilation along x: (L_V g)_ij = V^k d_k g_ij + g_kj d_i V^k + g_ik d_j V^k = 2 at (x, x).
  const tsy::Tensor02 d = tsy::lie_derivative_metric(flat, vec(flat, {"x", "0", "0"}));
  CHECK(d(0, 0) == flat.constant(2));
  CHECK(d(1, 1).is_zero());
  CHECK(d(0, 1).is_zero());

  // Hyperbolic frame with xi = e3: 2 beta (g - eta (x) eta) with beta = -1.
  const FrameManifold m = hyperbolic();
  const tsy::Tensor02 l = tsy::lie_derivative_metric(m, m.basis(2));
  CHECK(l(0, 0) == m.constant(-2));
  CHECK(l(1, 1) == m.constant(-2));
  CHECK(l(2, 2).is_zero());
  CHECK(l(0, 1).is_zero());
}

TEST_CASE("exterior derivative of one-forms", "[geometry]") {
  const FrameManifold flat = flat3();
  tsy::OneForm w(3, 3);
  w(1) = P(flat.chart(), "x");
  const tsy::Tensor02 dw = tsy::exterior_derivative(flat, w);
  CHECK(dw(0, 1) == flat.constant(1));
  CHECK(dw(1, 0) == flat.constant(-1));
  CHECK(dw(0, 2).is_zero());

  tsy::OneForm xdx(3, 3);
  xdx(0) = P(flat.chart(), "x");
  CHECK(tsy::exterior_derivative(flat, xdx).is_zero());

  // Exact forms are closed: w(e_i) = e_i f.
  for (const FrameManifold& m : {flat3(), hyperbolic(), heisenberg()}) {
    const Expr f = P(m.chart(), "x^2*y + z^3 - x*z");
    tsy::OneForm df(3, 3);
    for (std::size_t i = 0; i < 3; ++i) df(i) = m.derivative_along_basis(i, f);
    CHECK(tsy::exterior_derivative(m, df).is_zero());
  }
}

TEST_CASE("musical isomorphisms are mutually inverse", "[geometry]") {
  const FrameManifold m =
      frame_manifold({"x", "y", "z"}, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}, {},
                     {{"2", "1", "0"}, {"1", "3", "0"}, {"0", "0", "x^2 + 1"}});
  const FrameVector v = vec(m, {"x", "y*z", "1"});
  CHECK(m.sharp(m.flat(v)) == v);
}

TEST_CASE("invalid frames and metrics are rejected", "[geometry]") {
  CHECK_THROWS_AS(frame_manifold({"x", "y"}, {{"1", "x"}, {"2", "2*x"}}), tsy::GeometryError);
  CHECK_THROWS_AS(frame_manifold({"x", "y"}, {{"1", "0"}, {"0", "1"}}, {}, {{"1", "x"}, {"0", "1"}}),
                  tsy::GeometryError);
  CHECK_THROWS_AS(frame_manifold({"x", "y"}, {{"1", "0"}, {"0", "1"}}, {}, {{"x", "x"}, {"x", "x"}}),
                  tsy::GeometryError);
}
