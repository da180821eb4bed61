#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cmctori/numerics.hpp"

namespace cmctori {

// ---------------------------------------------------------------------------
// Parameters of a rotational CMC surface in the unit 3-sphere.
//
// The admissible triples (s, t, gamma) satisfy
//     (s + t)^2 - 4 s t sin^2(gamma) = 1/4
// with s > 0, t in (-s, s] \ {0}, gamma in (0, pi/4].  The surface is flat
// exactly when s == t; it is a torus of revolution otherwise.

struct SurfaceParams {
  double s = 0.0;
  double t = 0.0;
  double gamma = 0.0;
  double tau = 0.0;    // sqrt(1 - t^2/s^2)
  double H = 0.0;      // cot(2 gamma) >= 0

  // Builds params from (s, t); gamma is recovered from the constraint.
  // Throws std::domain_error when no admissible gamma exists.
  static SurfaceParams from_st(double s, double t);

  bool flat() const { return s == t; }
  double constraint_residual() const;
};

// gamma solving the constraint for given (s, t); throws when the arcsine
// argument leaves (0, 1] or the resulting gamma exceeds pi/4.
double gamma_from_st(double s, double t);

// Profile function v(x) = 2t / dn_tau(2 s x) (constant 2t when s == t) and
// its derivative.  |v| ranges over [2|t|, 2s], v(0) = 2t.
double profile_v(const SurfaceParams& p, double x);
double profile_v_prime(const SurfaceParams& p, double x);

// Period of v; throws std::domain_error in the flat case.
double period_x0(const SurfaceParams& p);

// ---------------------------------------------------------------------------
// Pointwise metric factor rho(x) and Gauss curvature K(x).
struct MetricCurvature {
  double rho;
  double K;
};
MetricCurvature metric_and_curvature(const SurfaceParams& p, double x);

enum class SurfaceClass { Unduloidal, Nodoidal, Flat, Sphere };
std::string to_string(SurfaceClass c);

// Bulge/neck distances and classification.  r_plus + r_minus == 2 gamma.
struct GeometricSummary {
  double H = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double X_plus = 0.0;
  double X_minus = 0.0;
  double r_plus = 0.0;   // signed axis distance of the bulges
  double r_minus = 0.0;  // signed axis distance of the necks
  SurfaceClass cls = SurfaceClass::Unduloidal;
};
GeometricSummary geometry(const SurfaceParams& p);

// ---------------------------------------------------------------------------
// Closing data.  The profile advances by a fixed angle around the axis
// circle per period of v; the surface closes after k periods when
// k * Phi is an integer multiple of 2 pi.

// Signed axis-angle advance over one period of v, evaluated as
// 2 * arctan(C_f * tan(integral over half a period)) with the arctan branch
// continued in the upper integration limit.  Negative for nodoidal-side
// surfaces (s t < 0).  Throws in the flat case and when the C_f denominator
// degenerates.
double axis_angle_per_period(const SurfaceParams& p);

struct ClosureData {
  int k = 0;             // periods of v per closed profile (= bulge count)
  int w = 0;             // wrapping number about the axis circle, in [1, k)
  double x0 = 0.0;       // period of v
  double x1 = 0.0;       // total profile length, k * x0
  double angle_per_period = 0.0;  // signed Phi
  double residual = 0.0;          // |k * Phi - 2 pi w| taken mod 2 pi
};

// Smallest k <= k_max such that the per-period angle matches a rational
// angle 2 pi w / k within tol (angle tolerance per period); (k, w) coprime.
std::optional<ClosureData> closure_search(const SurfaceParams& p, int k_max,
                                          double tol);

// Closure data for the flat case, where the profile closes after
// x1 = 2 pi / tan(gamma) without a v-period.
ClosureData flat_closure(const SurfaceParams& p);

// Solve the closing condition k * Phi(s, t) = 2 pi w for t at fixed s
// (bracketed in t), or for s at fixed t.  gamma is recomputed from the
// constraint at every trial point; throws when the bracket has no sign
// change or leaves the admissible domain.
SurfaceParams solve_closing(double s, int k, int w, double t_lo, double t_hi);
SurfaceParams solve_closing_in_s(double t, int k, int w, double s_lo, double s_hi);

// ---------------------------------------------------------------------------
// The immersion into S^3.

struct ImmersionSample {
  std::array<double, 4> point{};
  double x = 0.0;
  double y = 0.0;
  double on_sphere_residual = 0.0;
  double conformality_residual = 0.0;
};

// Evaluates the conformal immersion.  The two cumulative complex integrals
// entering the hyperbolic arguments are cached at 64 checkpoints per period
// so that repeated sampling costs one short quadrature panel per call.
// All complex square roots are taken on branches continued in x; the factors
// under the roots stay inside fixed half-planes, which the evaluator checks.
class Immersion {
 public:
  explicit Immersion(const SurfaceParams& p);

  std::array<double, 4> point(double x, double y) const;

  // point() plus on-sphere and finite-difference conformality residuals.
  ImmersionSample sample(double x, double y) const;

  const SurfaceParams& params() const { return p_; }

 private:
  ComplexValue g_plus(double x) const;
  ComplexValue g_minus(double x) const;

  SurfaceParams p_;
  ComplexValue e2ig_;           // e^{2 i gamma}
  ComplexValue A_, B_;
  double arg_A_ = 0.0, arg_B_ = 0.0;
  double period_ = 0.0;         // x0 (or an arbitrary span in the flat case)
  ComplexValue Gp_, Gm_;        // g_{+-} over one period
  std::vector<ComplexValue> cp_plus_, cp_minus_;  // checkpoints on [0, period]
};

ImmersionSample immerse(const SurfaceParams& p, double x, double y);

// ---------------------------------------------------------------------------
// Profile curve in the totally geodesic 2-sphere containing the axis,
// stereographically projected so the axis becomes the unit circle and the
// bulges land inside it.

struct ProfilePoint {
  double x = 0.0;            // profile parameter
  double px = 0.0, py = 0.0; // projected planar coordinates
  double axis_distance = 0.0;  // signed geodesic distance from the axis
  bool is_bulge = false;
  bool is_neck = false;
};

std::vector<ProfilePoint> profile_curve(const SurfaceParams& p,
                                        const ClosureData& closure,
                                        int n_samples);

}  // namespace cmctori
