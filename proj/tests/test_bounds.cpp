#include "cmctori/bounds.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace cmctori;

TEST_CASE("flat_index: minimal flat torus has index 5 and nullity 4") {
  FlatResult r = flat_index(0.0);
  CHECK(r.alpha == doctest::Approx(1.0));
  CHECK(r.b == 1);
  CHECK(r.index == 5);
  CHECK(r.nullity == 4);
}

TEST_CASE("flat_index: three boundary modes appear at alpha = 1/3") {
  // invert alpha = (sqrt(1+H^2) - H)^2 at alpha = 1/3: H = (1-a)/(2 sqrt a)
  const double alpha = 1.0 / 3.0;
  const double H = (1.0 - alpha) / (2.0 * std::sqrt(alpha));
  FlatResult r = flat_index(H);
  CHECK(r.alpha == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(r.nullity == 6);
  CHECK(r.b == 1);  // strictly-less-than resolves the exact integer downward
  const auto [li, ln] = flat_lattice_index(H);
  CHECK(li == r.index);
  CHECK(ln == 6);
}

TEST_CASE("flat_index: the first H with b = 3 gives index 9") {
  // smallest H with sqrt((1+alpha)/alpha) > 3  <=>  alpha < 1/8
  const double H_edge = (1.0 - 0.125) / (2.0 * std::sqrt(0.125));
  FlatResult r = flat_index(H_edge + 1e-3);
  CHECK(r.b == 3);
  CHECK(r.index == 9);
  const auto [li, ln] = flat_lattice_index(H_edge + 1e-3);
  CHECK(li == 9);
  CHECK(ln == r.nullity);
}

TEST_CASE("flat formula equals the lattice oracle over a sweep, b monotone") {
  int prev_b = -1;
  int prev_index = -1;
  for (int i = 0; i < 200; ++i) {
    const double H = 10.0 * i / 199.0;
    FlatResult r = flat_index(H);
    const auto [li, ln] = flat_lattice_index(H);
    CHECK(li == r.index);
    CHECK(ln == r.nullity);
    CHECK((r.nullity == 4 || r.nullity == 6));
    CHECK(r.b >= prev_b);
    if (prev_b >= 0 && r.b == prev_b + 1) CHECK(r.index == prev_index + 2);
    prev_b = r.b;
    prev_index = r.index;
  }
}

TEST_CASE("torus_bounds on catalog classes") {
  BoundReport m = torus_bounds(SurfaceClass::Nodoidal, 5, 1);
  CHECK(m.base_bound == 11);
  REQUIRE(m.improved_bound.has_value());
  CHECK(*m.improved_bound == 15);

  BoundReport h = torus_bounds(SurfaceClass::Unduloidal, 9, 4);
  CHECK(h.base_bound == 19);
  REQUIRE(h.improved_bound.has_value());
  CHECK(*h.improved_bound == 31);

  BoundReport a = torus_bounds(SurfaceClass::Unduloidal, 2, 1);
  CHECK(a.base_bound == 5);
  CHECK(!a.improved_bound.has_value());

  CHECK_THROWS_AS(torus_bounds(SurfaceClass::Flat, 1, 1), std::domain_error);
}

TEST_CASE("sphere_constants") {
  const auto [ind, nul] = sphere_constants();
  CHECK(ind == 1);
  CHECK(nul == 3);
  CHECK(ind < flat_index(0.0).index);
  CHECK(nul == 3);
}

TEST_CASE("verify_surface attaches numerics and checks satisfaction") {
  SurfaceParams p = solve_closing(0.4078, 2, 1, 0.14, 0.18);
  auto c = closure_search(p, 16, 1e-6);
  REQUIRE(c.has_value());
  Spectrum1D sp = solve_spectrum_1d(build_potential(p, *c, 2048), 256);
  IndexReport ir = assemble_index(sp);
  BoundReport br = verify_surface(p, *c, ir);
  CHECK(br.cls == SurfaceClass::Unduloidal);
  CHECK(br.base_bound == 5);
  REQUIRE(br.numeric_index.has_value());
  CHECK(*br.numeric_index == 6);
  CHECK(br.satisfied);
}
