#include "properties.hpp"

#include <catch_amalgamated.hpp>

using namespace fx;

namespace {

void require_all(const FrameManifold& m) {
  const PropertyReport p = check_properties(m);
  CHECK(p.torsion_free);
  CHECK(p.metric_compatible);
  CHECK(p.riemann_antisymmetric);
  CHECK(p.first_bianchi);
  CHECK(p.pair_symmetric);
  CHECK(p.ricci_symmetric);
  CHECK(p.conformal_is_quasi_conformal);
  CHECK(p.conformal_vanishes);
}

}  // namespace

TEST_CASE("named fixtures", "[property]") {
  require_all(hyperbolic());
  require_all(flat3());
  require_all(heisenberg());
  require_all(reversed());
  require_all(sphere(3));
  require_all(sphere(4));
  require_all(frame_manifold({"x", "y", "z"}, {{"z", "0", "0"}, {"0", "z", "0"}, {"0", "0", "1"}}, {"z"}));
}

TEST_CASE("50 random polynomial-frame manifolds", "[property]") {
  std::mt19937 rng(314159);
  int built = 0, tried = 0;
  while (built < 50 && tried < 200) {
    ++tried;
    const std::size_t n = tried % 5 == 0 ? 4 : 3;
    const auto m = random_manifold(rng, n);
    if (!m) continue;
    ++built;
    INFO("manifold " << built << ", dimension " << n);
    require_all(*m);
  }
  CHECK(built == 50);
}
