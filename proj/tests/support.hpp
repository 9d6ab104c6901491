#pragma once

// Fixtures shared by the unit tests, built directly through the library API.

#include <tsy/contact.hpp>
#include <tsy/curvature.hpp>
#include <tsy/geometry.hpp>

#include <string>
#include <vector>

namespace fx {

using tsy::Chart;
using tsy::ContactStructure;
using tsy::Expr;
using tsy::FrameManifold;
using tsy::FrameVector;
using tsy::Rational;

inline Expr P(const Chart& c, const std::string& s) { return tsy::parse(s, c); }

inline FrameManifold frame_manifold(const std::vector<std::string>& coords,
                                    const std::vector<std::vector<std::string>>& frame,
                                    const std::vector<std::string>& nonzero = {},
                                    const std::vector<std::vector<std::string>>& metric = {}) {
  Chart c(coords);
  for (const auto& s : nonzero) c.add_domain_constraint(P(c, s));
  const std::size_t n = coords.size();
  std::vector<tsy::VectorField> f(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) f[i].components.push_back(P(c, frame[i][k]));
  tsy::ExprMatrix g = tsy::ExprMatrix::identity(n, n);
  if (!metric.empty())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) g(i, k) = P(c, metric[i][k]);
  return FrameManifold(c, std::move(f), std::move(g));
}

// e1 = z d/dx, e2 = z d/dy, e3 = z d/dz: hyperbolic 3-space, curvature -1.
inline FrameManifold hyperbolic() {
  return frame_manifold({"x", "y", "z"}, {{"z", "0", "0"}, {"0", "z", "0"}, {"0", "0", "z"}}, {"z"});
}

inline FrameManifold flat3() {
  return frame_manifold({"x", "y", "z"}, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
}

// Heisenberg group with a left-invariant frame: Sasakian.
inline FrameManifold heisenberg() {
  return frame_manifold({"x", "y", "z"}, {{"0", "2", "0"}, {"2", "0", "2*y"}, {"0", "0", "2"}});
}

// Same frame as hyperbolic() with e3 reversed.
inline FrameManifold reversed() {
  return frame_manifold({"x", "y", "z"}, {{"z", "0", "0"}, {"0", "z", "0"}, {"0", "0", "-z"}}, {"z"});
}

// Stereographic charts of the unit spheres: e_i = (1 + |x|^2)/2 d/dx_i.
inline FrameManifold sphere(std::size_t n) {
  std::vector<std::string> names = {"x", "y", "z", "w"};
  names.resize(n);
  std::string q = "(1";
  for (const auto& v : names) q += " + " + v + "^2";
  q += ")/2";
  std::vector<std::vector<std::string>> frame(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) frame[i][i] = q;
  return frame_manifold(names, frame);
}

// phi e1 = -e2, phi e2 = e1, phi e3 = 0 and xi = e3.
inline ContactStructure standard_contact(const FrameManifold& m) {
  tsy::Tensor11 phi(3, m.nvars());
  phi(0, 1) = m.constant(-1);
  phi(1, 0) = m.constant(1);
  return tsy::make_contact_structure(m, phi, m.basis(2));
}

inline FrameVector vec(const FrameManifold& m, const std::vector<std::string>& comps) {
  FrameVector v = m.zero_vector();
  for (std::size_t k = 0; k < comps.size(); ++k) v(k) = P(m.chart(), comps[k]);
  return v;
}

}  // namespace fx
