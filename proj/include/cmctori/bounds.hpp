#pragma once

#include <optional>
#include <utility>

#include "cmctori/spectrum.hpp"
#include "cmctori/surface.hpp"

namespace cmctori {

// ---------------------------------------------------------------------------
// Flat tori: closed-form index and nullity.
//
// With alpha = (sqrt(1+H^2) - H)^2 in (0,1], the 2-D eigenvalues are
// lambda_{m,n} = m^2 + alpha n^2 - 1 - alpha over integers m, n >= 0 with
// multiplicities 4 / 2 / 1 (mn > 0 / one of them zero / both zero).

struct FlatResult {
  double H = 0.0;
  double alpha = 1.0;
  int b = 0;         // greatest integer strictly below sqrt((1+alpha)/alpha)
  int index = 0;     // 3 + 2b
  int nullity = 0;   // 6 when sqrt((1+alpha)/alpha) is an integer, else 4
};

FlatResult flat_index(double H);

// Brute-force lattice enumeration with the stated multiplicities; the
// independent oracle for flat_index.  Returns (index, nullity).
std::pair<int, int> flat_lattice_index(double H);

// ---------------------------------------------------------------------------
// Lower bounds for non-flat tori and the comparison report.

struct BoundReport {
  SurfaceClass cls = SurfaceClass::Unduloidal;
  int k = 0;
  int w = 0;
  int base_bound = 0;                 // max(5, 2k+1)
  std::optional<int> improved_bound;  // nodoidal k>=2 / unduloidal w>=2
  int nullity_bound = 5;
  std::optional<int> numeric_index;
  std::optional<int> numeric_nullity;
  bool satisfied = false;
};

// Bounds only (no numerics attached).  Throws for flat/sphere classes,
// which have exact formulas instead of bounds.
BoundReport torus_bounds(SurfaceClass cls, int k, int w);

// Round spheres: index 1, nullity 3 (reported constants, no computation).
std::pair<int, int> sphere_constants();

// Attaches the numerically assembled index/nullity to the applicable
// bounds and sets the satisfied flag.
BoundReport verify_surface(const SurfaceParams& p, const ClosureData& closure,
                           const IndexReport& report);

}  // namespace cmctori
