#include "cmctori/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace cmctori {

namespace {

double alpha_of(double H) {
  const double r = std::sqrt(1.0 + H * H) - H;
  return r * r;
}

}  // namespace

FlatResult flat_index(double H) {
  if (!(H >= 0.0)) throw std::domain_error("flat_index: H must be >= 0");
  FlatResult r;
  r.H = H;
  r.alpha = alpha_of(H);

  const double edge = std::sqrt((1.0 + r.alpha) / r.alpha);
  // "Greatest integer strictly less than": exact integers resolve downward,
  // consistent with boundary lattice points counting toward the nullity.
  const double nearest = std::round(edge);
  const bool integral = std::fabs(edge - nearest) <= 1e-9;
  r.b = integral ? static_cast<int>(nearest) - 1
                 : static_cast<int>(std::floor(edge));
  r.index = 3 + 2 * r.b;
  r.nullity = integral ? 6 : 4;
  return r;
}

std::pair<int, int> flat_lattice_index(double H) {
  if (!(H >= 0.0)) throw std::domain_error("flat_lattice_index: H must be >= 0");
  const double alpha = alpha_of(H);
  const int m_max = static_cast<int>(std::ceil(std::sqrt((1.0 + alpha) / alpha))) + 2;

  int index = 0, nullity = 0;
  for (int m = 0; m <= m_max; ++m) {
    for (int n = 0; n <= m_max; ++n) {
      const double lam = m * m + alpha * n * n - 1.0 - alpha;
      int mult;
      if (m > 0 && n > 0)
        mult = 4;
      else if (m + n > 0)
        mult = 2;
      else
        mult = 1;
      if (lam < -1e-12)
        index += mult;
      else if (std::fabs(lam) <= 1e-12)
        nullity += mult;
    }
  }
  return {index, nullity};
}

BoundReport torus_bounds(SurfaceClass cls, int k, int w) {
  if (cls == SurfaceClass::Flat || cls == SurfaceClass::Sphere)
    throw std::domain_error("torus_bounds applies to non-flat tori only");
  if (k < 1 || w < 1) throw std::invalid_argument("k and w must be positive");

  BoundReport r;
  r.cls = cls;
  r.k = k;
  r.w = w;
  r.base_bound = std::max(5, 2 * k + 1);
  r.nullity_bound = 5;
  if (cls == SurfaceClass::Nodoidal && k >= 2)
    r.improved_bound = std::max(11, 2 * k + 5);
  else if (cls == SurfaceClass::Unduloidal && w >= 2)
    r.improved_bound = std::max(6 * w - 1, 2 * k + 4 * w - 3);
  return r;
}

std::pair<int, int> sphere_constants() { return {1, 3}; }

BoundReport verify_surface(const SurfaceParams& p, const ClosureData& closure,
                           const IndexReport& report) {
  const GeometricSummary g = geometry(p);
  BoundReport r = torus_bounds(g.cls, closure.k, closure.w);
  r.numeric_index = report.index;
  r.numeric_nullity = report.nullity;
  int needed = r.base_bound;
  if (r.improved_bound) needed = std::max(needed, *r.improved_bound);
  r.satisfied = report.index >= needed && report.nullity >= r.nullity_bound;
  return r;
}

}  // namespace cmctori
