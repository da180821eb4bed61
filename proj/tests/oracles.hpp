// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "cmctori/numerics.hpp"
#include "cmctori/surface.hpp"

namespace oracles {

// K(tau) by direct adaptive quadrature of the defining integral
//   K = int_0^1 dr / sqrt((1-r^2)(1-tau^2 r^2)),
// with the substitution r = sin(theta) removing the endpoint singularity:
//   K = int_0^{pi/2} dtheta / sqrt(1 - tau^2 sin^2 theta).
inline double elliptic_K_quadrature(double tau, double tol = 1e-12) {
  auto f = [tau](double th) {
    const double s = std::sin(th);
    return 1.0 / std::sqrt(1.0 - tau * tau * s * s);
  };
  return cmctori::integrate(f, 0.0, 1.5707963267948966, tol).value;
}

// dn(u, tau) by RK4 integration of the Jacobi system
//   sn' = cn dn, cn' = -sn dn, dn' = -tau^2 sn cn
// from (0, 1, 1).
inline double dn_by_ode(double u, double tau, int steps = 20000) {
  double sn = 0.0, cn = 1.0, dn = 1.0;
  const double h = u / steps;
  auto rhs = [tau](const std::array<double, 3>& y) {
    return std::array<double, 3>{y[1] * y[2], -y[0] * y[2],
                                 -tau * tau * y[0] * y[1]};
  };
  std::array<double, 3> y{sn, cn, dn};
  for (int i = 0; i < steps; ++i) {
    const auto k1 = rhs(y);
    std::array<double, 3> y2, y3, y4;
    for (int j = 0; j < 3; ++j) y2[j] = y[j] + 0.5 * h * k1[j];
    const auto k2 = rhs(y2);
    for (int j = 0; j < 3; ++j) y3[j] = y[j] + 0.5 * h * k2[j];
    const auto k3 = rhs(y3);
    for (int j = 0; j < 3; ++j) y4[j] = y[j] + h * k3[j];
    const auto k4 = rhs(y4);
    for (int j = 0; j < 3; ++j)
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return y[2];
}

// Central finite difference of a scalar function.
inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Finite-difference second fundamental form of an immersion into S^3.
// Returns (H, K, rho); the normal is the 4-D generalized cross product of
// (P, Px, Py), oriented so H >= 0.
struct SecondForm {
  double H, K, rho;
};

inline std::array<double, 4> cross4(const std::array<double, 4>& a,
                                    const std::array<double, 4>& b,
                                    const std::array<double, 4>& c) {
  auto det3 = [](double m00, double m01, double m02, double m10, double m11,
                 double m12, double m20, double m21, double m22) {
    return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
           m02 * (m10 * m21 - m11 * m20);
  };
  std::array<double, 4> d;
  d[0] = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
  d[1] = -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
  d[2] = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
  d[3] = -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
  return d;
}

inline SecondForm second_form(const cmctori::Immersion& imm, double x, double y,
                              double h = 1e-4) {
  using V4 = std::array<double, 4>;
  const V4 P = imm.point(x, y);
  const V4 Pxp = imm.point(x + h, y), Pxm = imm.point(x - h, y);
  const V4 Pyp = imm.point(x, y + h), Pym = imm.point(x, y - h);
  const V4 Ppp = imm.point(x + h, y + h), Ppm = imm.point(x + h, y - h);
  const V4 Pmp = imm.point(x - h, y + h), Pmm = imm.point(x - h, y - h);

  V4 Px, Py, Pxx, Pyy, Pxy;
  for (int i = 0; i < 4; ++i) {
    Px[i] = (Pxp[i] - Pxm[i]) / (2 * h);
    Py[i] = (Pyp[i] - Pym[i]) / (2 * h);
    Pxx[i] = (Pxp[i] - 2 * P[i] + Pxm[i]) / (h * h);
    Pyy[i] = (Pyp[i] - 2 * P[i] + Pym[i]) / (h * h);
    Pxy[i] = (Ppp[i] - Ppm[i] - Pmp[i] + Pmm[i]) / (4 * h * h);
  }
  V4 nu = cross4(P, Px, Py);
  double nn = 0.0, rho = 0.0;
  for (int i = 0; i < 4; ++i) {
    nn += nu[i] * nu[i];
    rho += Px[i] * Px[i];
  }
  nn = std::sqrt(nn);
  double hxx = 0.0, hyy = 0.0, hxy = 0.0;
  for (int i = 0; i < 4; ++i) {
    hxx += Pxx[i] * nu[i] / nn;
    hyy += Pyy[i] * nu[i] / nn;
    hxy += Pxy[i] * nu[i] / nn;
  }
  SecondForm sf;
  sf.rho = rho;
  sf.H = (hxx + hyy) / (2.0 * rho);
  if (sf.H < 0.0) {
    sf.H = -sf.H;
    hxx = -hxx;
    hyy = -hyy;
    hxy = -hxy;
  }
  sf.K = 1.0 + (hxx * hyy - hxy * hxy) / (rho * rho);
  return sf;
}

// Random admissible parameters: gamma uniform in (0.05, pi/4], t in a range,
// s solved from the constraint.  Returns {s, t}; retries until admissible.
inline std::pair<double, double> random_params(std::mt19937& rng,
                                               bool allow_negative_t = true) {
  std::uniform_real_distribution<double> ug(0.05, 0.7853981633974483);
  std::uniform_real_distribution<double> ut(allow_negative_t ? -0.35 : 0.02, 0.45);
  for (;;) {
    const double g = ug(rng);
    const double t = ut(rng);
    if (std::fabs(t) < 5e-3) continue;
    const double disc = 0.25 - t * t * std::pow(std::sin(2.0 * g), 2);
    if (disc <= 0.0) continue;
    const double s = -t * std::cos(2.0 * g) + std::sqrt(disc);
    if (s <= 0.0 || std::fabs(t) > s) continue;
    // verify round trip through the constraint
    try {
      cmctori::SurfaceParams p = cmctori::SurfaceParams::from_st(s, t);
      if (p.constraint_residual() > 1e-12) continue;
    } catch (const std::exception&) {
      continue;
    }
    return {s, t};
  }
}

}  // namespace oracles
