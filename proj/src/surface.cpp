#include "cmctori/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmctori {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_to_unit_circle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

double gamma_from_st(double s, double t) {
  if (!(s > 0.0)) throw std::domain_error("s must be positive");
  if (t == 0.0 || t <= -s || t > s)
    throw std::domain_error("t must lie in (-s, s] \\ {0}");
  const double ratio = ((s + t) * (s + t) - 0.25) / (4.0 * s * t);
  if (!(ratio > 0.0) || ratio > 1.0)
    throw std::domain_error("no CMC surface with these (s, t)");
  const double gamma = std::asin(std::sqrt(ratio));
  if (gamma > kPi / 4.0 + 1e-12)
    throw std::domain_error("constraint solution has gamma > pi/4");
  return std::min(gamma, kPi / 4.0);
}

SurfaceParams SurfaceParams::from_st(double s, double t) {
  SurfaceParams p;
  p.s = s;
  p.t = t;
  p.gamma = gamma_from_st(s, t);
  const double r = t / s;
  p.tau = (s == t) ? 0.0 : std::sqrt(std::max(0.0, (1.0 - r) * (1.0 + r)));
  p.H = std::cos(2.0 * p.gamma) / std::sin(2.0 * p.gamma);
  return p;
}

double SurfaceParams::constraint_residual() const {
  const double sg = std::sin(gamma);
  return std::fabs((s + t) * (s + t) - 4.0 * s * t * sg * sg - 0.25);
}

double profile_v(const SurfaceParams& p, double x) {
  if (p.flat()) return 2.0 * p.t;
  return 2.0 * p.t / jacobi_dn(2.0 * p.s * x, p.tau);
}

double profile_v_prime(const SurfaceParams& p, double x) {
  if (p.flat()) return 0.0;
  const JacobiTriple j = jacobi_elliptic(2.0 * p.s * x, p.tau);
  return 4.0 * p.s * p.t * p.tau * p.tau * j.sn * j.cn / (j.dn * j.dn);
}

double period_x0(const SurfaceParams& p) {
  if (p.flat()) throw std::domain_error("period undefined; v is constant");
  return elliptic_K(p.tau) / p.s;
}

MetricCurvature metric_and_curvature(const SurfaceParams& p, double x) {
  const double v = profile_v(p, x);
  const double v2 = v * v;
  const double s2t2 = p.s * p.s * p.t * p.t;
  const double sin2g = std::sin(2.0 * p.gamma);
  const double rho = 16.0 * s2t2 * sin2g * sin2g / v2;
  const double K = -(v2 - 16.0 * s2t2 / v2) / rho;
  return {rho, K};
}

std::string to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::Unduloidal: return "unduloidal";
    case SurfaceClass::Nodoidal: return "nodoidal";
    case SurfaceClass::Flat: return "flat";
    case SurfaceClass::Sphere: return "sphere";
  }
  return "?";
}

GeometricSummary geometry(const SurfaceParams& p) {
  GeometricSummary g;
  g.H = p.H;
  const double st = p.s * p.t;
  const double sg = std::sin(p.gamma), cg = std::cos(p.gamma);
  const double sin2g = std::sin(2.0 * p.gamma);
  g.mu_plus = std::sqrt(1.0 + 16.0 * st * sg * sg);
  g.mu_minus = std::sqrt(std::max(0.0, 1.0 - 16.0 * st * cg * cg));
  g.X_plus = (-2.0 * g.mu_minus * sg * sg + 2.0 * g.mu_plus * cg * cg) /
             (2.0 + (g.mu_minus + g.mu_plus) * sin2g);
  g.X_minus = (2.0 * g.mu_minus * sg * sg + 2.0 * g.mu_plus * cg * cg) /
              (2.0 - (g.mu_minus - g.mu_plus) * sin2g);
  g.r_plus = kPi / 2.0 - 2.0 * std::atan(g.X_plus);
  g.r_minus = kPi / 2.0 - 2.0 * std::atan(g.X_minus);
  if (p.flat())
    g.cls = SurfaceClass::Flat;
  else if (st < 0.0 && g.r_plus <= kPi / 2.0)
    g.cls = SurfaceClass::Nodoidal;
  else
    g.cls = SurfaceClass::Unduloidal;
  return g;
}

// ---------------------------------------------------------------------------
// Closing condition.

double axis_angle_per_period(const SurfaceParams& p) {
  if (p.flat()) throw std::domain_error("axis angle per period needs s != t");
  const double s = p.s, t = p.t;
  const double sin2g = std::sin(2.0 * p.gamma);
  const double cos2g = std::cos(2.0 * p.gamma);
  const double x0 = period_x0(p);

  // v is symmetric about x0/2, so integrating half a period suffices.
  auto integrand = [&](double x) {
    const double v = profile_v(p, x);
    const double v2 = v * v;
    const double den = v2 * v2 + 16.0 * s * s * t * t + 8.0 * s * t * v2 * cos2g;
    return 8.0 * s * t * v2 * sin2g / den;
  };
  const double theta_half = integrate(integrand, 0.0, 0.5 * x0, 1e-12).value;

  const GeometricSummary g = geometry(p);
  const double cg = std::cos(p.gamma), sg = std::sin(p.gamma);
  const double den = g.mu_plus * cg * cg - g.mu_minus * sg * sg;
  if (std::fabs(den) < 1e-14)
    throw std::domain_error("singular configuration in closing coefficient");
  const double cf = 2.0 * (t + s * cos2g) / den;

  // Branch of the arctangent continued in the integration upper limit:
  // the unwrapped value stays within pi/2 of theta_half.
  double phi_half = std::atan(cf * std::tan(theta_half));
  phi_half += kPi * std::round((theta_half - phi_half) / kPi);
  return 2.0 * phi_half;
}

std::optional<ClosureData> closure_search(const SurfaceParams& p, int k_max,
                                          double tol) {
  const double phi = axis_angle_per_period(p);
  const double phi_geo = wrap_to_unit_circle(phi);
  const double x0 = period_x0(p);

  for (int k = 1; k <= k_max; ++k) {
    const int w = static_cast<int>(std::lround(k * phi_geo / kTwoPi));
    if (w < 1 || w > k) continue;
    if (std::gcd(k, w) != 1) continue;
    const double residual = std::fabs(k * phi_geo - kTwoPi * w);
    // Tolerance applies to the per-period angle mismatch.
    if (residual <= k * tol) {
      ClosureData c;
      c.k = k;
      c.w = w;
      c.x0 = x0;
      c.x1 = k * x0;
      c.angle_per_period = phi;
      c.residual = residual;
      return c;
    }
  }
  return std::nullopt;
}

ClosureData flat_closure(const SurfaceParams& p) {
  if (!p.flat()) throw std::domain_error("flat_closure needs s == t");
  ClosureData c;
  c.k = 1;
  c.w = 1;
  c.x1 = kTwoPi / std::tan(p.gamma);
  c.x0 = c.x1;
  c.angle_per_period = kTwoPi;
  c.residual = 0.0;
  return c;
}

namespace {

// Signed closing residual k*Phi - 2 pi * (unwrapped target); the integer
// target branch is fixed at the bracket midpoint so the function is
// continuous across the bracket.
class ClosingResidual {
 public:
  ClosingResidual(int k, int w) : k_(k), w_(w) {}

  void fix_branch(const SurfaceParams& mid) {
    const double raw = k_ * axis_angle_per_period(mid) / kTwoPi;
    branch_ = static_cast<int>(std::lround((raw - w_) / k_));
  }

  double operator()(const SurfaceParams& p) const {
    return k_ * axis_angle_per_period(p) - kTwoPi * (w_ + k_ * branch_);
  }

 private:
  int k_, w_;
  int branch_ = 0;
};

}  // namespace

SurfaceParams solve_closing(double s, int k, int w, double t_lo, double t_hi) {
  if (k < 1 || w < 1) throw std::invalid_argument("k and w must be positive");
  ClosingResidual res(k, w);
  res.fix_branch(SurfaceParams::from_st(s, 0.5 * (t_lo + t_hi)));
  auto f = [&](double t) { return res(SurfaceParams::from_st(s, t)); };
  const double t = find_root(f, t_lo, t_hi, 1e-13);
  SurfaceParams p = SurfaceParams::from_st(s, t);
  if (std::fabs(res(p)) > 1e-8)
    throw std::runtime_error("solve_closing: residual above 1e-8 at root");
  return p;
}

SurfaceParams solve_closing_in_s(double t, int k, int w, double s_lo,
                                 double s_hi) {
  if (k < 1 || w < 1) throw std::invalid_argument("k and w must be positive");
  ClosingResidual res(k, w);
  res.fix_branch(SurfaceParams::from_st(0.5 * (s_lo + s_hi), t));
  auto f = [&](double s) { return res(SurfaceParams::from_st(s, t)); };
  const double s = find_root(f, s_lo, s_hi, 1e-13);
  SurfaceParams p = SurfaceParams::from_st(s, t);
  if (std::fabs(res(p)) > 1e-8)
    throw std::runtime_error("solve_closing: residual above 1e-8 at root");
  return p;
}

// ---------------------------------------------------------------------------
// Immersion.

namespace {
constexpr int kCheckpointsPerPeriod = 64;
}

Immersion::Immersion(const SurfaceParams& p) : p_(p) {
  const double g2 = 2.0 * p.gamma;
  e2ig_ = ComplexValue(std::cos(g2), std::sin(g2));
  A_ = p.s + p.t * e2ig_;
  B_ = p.s * e2ig_ + p.t;
  arg_A_ = std::arg(A_);
  arg_B_ = std::arg(B_);

  period_ = p.flat() ? 1.0 : period_x0(p);

  auto gp_rate = [this](double x) {
    const double v = profile_v(p_, x);
    const ComplexValue C = 4.0 * p_.s * p_.t * e2ig_ + v * v;
    return 8.0 * p_.s * p_.t * e2ig_ / C;
  };
  auto gm_rate = [this](double x) {
    const double v = profile_v(p_, x);
    const ComplexValue D = 4.0 * p_.s * p_.t + v * v * e2ig_;
    return 8.0 * p_.s * p_.t / D;
  };

  const int nc = kCheckpointsPerPeriod;
  cp_plus_.assign(nc + 1, ComplexValue(0.0, 0.0));
  cp_minus_.assign(nc + 1, ComplexValue(0.0, 0.0));
  const double h = period_ / nc;
  for (int j = 1; j <= nc; ++j) {
    const double a = (j - 1) * h, b = j * h;
    cp_plus_[j] = cp_plus_[j - 1] + integrate_complex(gp_rate, a, b, 1e-13);
    cp_minus_[j] = cp_minus_[j - 1] + integrate_complex(gm_rate, a, b, 1e-13);
  }
  Gp_ = cp_plus_[nc];
  Gm_ = cp_minus_[nc];
}

ComplexValue Immersion::g_plus(double x) const {
  const double n = std::floor(x / period_);
  const double r = x - n * period_;
  const double h = period_ / kCheckpointsPerPeriod;
  int j = std::min(static_cast<int>(r / h), kCheckpointsPerPeriod - 1);
  auto rate = [this](double xx) {
    const double v = profile_v(p_, xx);
    const ComplexValue C = 4.0 * p_.s * p_.t * e2ig_ + v * v;
    return 8.0 * p_.s * p_.t * e2ig_ / C;
  };
  return n * Gp_ + cp_plus_[j] + integrate_complex(rate, j * h, r, 1e-13);
}

ComplexValue Immersion::g_minus(double x) const {
  const double n = std::floor(x / period_);
  const double r = x - n * period_;
  const double h = period_ / kCheckpointsPerPeriod;
  int j = std::min(static_cast<int>(r / h), kCheckpointsPerPeriod - 1);
  auto rate = [this](double xx) {
    const double v = profile_v(p_, xx);
    const ComplexValue D = 4.0 * p_.s * p_.t + v * v * e2ig_;
    return 8.0 * p_.s * p_.t / D;
  };
  return n * Gm_ + cp_minus_[j] + integrate_complex(rate, j * h, r, 1e-13);
}

std::array<double, 4> Immersion::point(double x, double y) const {
  const double s = p_.s, t = p_.t;
  const double v = profile_v(p_, x);
  const double vp = profile_v_prime(p_, x);

  const ComplexValue C = 4.0 * s * t * e2ig_ + v * v;
  const ComplexValue D = 4.0 * s * t + v * v * e2ig_;
  const ComplexValue M = 2.0 * s * t * vp * (1.0 - e2ig_ * e2ig_);

  // C is confined to one horizontal half-plane (Im C = 4 s t sin 2g) and D
  // to the upper one (Im D = v^2 sin 2g), so the principal arguments below
  // are continuous in x.  A jump past the half-plane would mean a branch
  // tracking failure.
  if (C.imag() * (s * t) <= 0.0 || D.imag() <= 0.0)
    throw std::runtime_error("immersion branch tracking lost a half-plane");
  const double phi_C = std::arg(C);
  const double phi_D = std::arg(D);
  const double mod_C = std::abs(C), mod_D = std::abs(D);

  const auto polar = [](double m, double a) {
    return ComplexValue(m * std::cos(a), m * std::sin(a));
  };
  const ComplexValue sqrt_CD = polar(std::sqrt(mod_C * mod_D), 0.5 * (phi_C + phi_D));
  const ComplexValue sqrt_ABCD =
      polar(std::sqrt(std::abs(A_) * std::abs(B_) * mod_C * mod_D),
            0.5 * (arg_A_ + arg_B_ + phi_C + phi_D));
  const double half_ba = 0.5 * (arg_B_ - arg_A_);
  const ComplexValue root_ac_bc = polar(1.0, half_ba - phi_C);  // sqrt(conj(A)conj(C)/(conj(B)C))
  const ComplexValue root_bc_ac = polar(1.0, half_ba + phi_C);  // sqrt(B C/(A conj(C)))
  const ComplexValue root_cbar_c = polar(1.0, -phi_C);          // sqrt(conj(C)/C)
  const ComplexValue root_c_cbar = polar(1.0, +phi_C);          // sqrt(C/conj(C))

  const ComplexValue gp = g_plus(x);
  const ComplexValue gm = g_minus(x);
  const ComplexValue zp = 0.5 * (ComplexValue(x, y) - gp);
  const ComplexValue zm = 0.5 * (ComplexValue(x, y) - gm);
  const ComplexValue cp = std::cosh(zp), sp = std::sinh(zp);
  const ComplexValue cm = std::cosh(zm), sm = std::sinh(zm);

  const ComplexValue eig(std::cos(p_.gamma), std::sin(p_.gamma));
  const ComplexValue X =
      2.0 * eig * std::conj(B_) *
      (cm * sp * M / (v * A_ * sqrt_CD) + cm * cp * root_ac_bc - sm * sp * root_bc_ac);
  const ComplexValue Y =
      -cm * cp * M / (v * sqrt_ABCD) - cm * sp * root_cbar_c + sm * cp * root_c_cbar;

  return {X.real(), Y.imag(), Y.real(), X.imag()};
}

ImmersionSample Immersion::sample(double x, double y) const {
  ImmersionSample out;
  out.x = x;
  out.y = y;
  out.point = point(x, y);
  double norm2 = 0.0;
  for (double c : out.point) norm2 += c * c;
  out.on_sphere_residual = std::fabs(std::sqrt(norm2) - 1.0);

  const double h = 1e-4;
  const auto pxp = point(x + h, y), pxm = point(x - h, y);
  const auto pyp = point(x, y + h), pym = point(x, y - h);
  double sxsy = 0.0, sx2 = 0.0, sy2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double sx = (pxp[i] - pxm[i]) / (2.0 * h);
    const double sy = (pyp[i] - pym[i]) / (2.0 * h);
    sxsy += sx * sy;
    sx2 += sx * sx;
    sy2 += sy * sy;
  }
  out.conformality_residual = std::max(std::fabs(sxsy), std::fabs(sx2 - sy2));
  return out;
}

ImmersionSample immerse(const SurfaceParams& p, double x, double y) {
  return Immersion(p).sample(x, y);
}

// ---------------------------------------------------------------------------
// Profile curve.

std::vector<ProfilePoint> profile_curve(const SurfaceParams& p,
                                        const ClosureData& closure,
                                        int n_samples) {
  if (n_samples < 8) throw std::invalid_argument("profile_curve: too few samples");
  const Immersion imm(p);

  // Fix the hemisphere so the bulge at x = 0 has positive axis coordinate.
  const double u0 = imm.point(0.0, 0.0)[3];
  const double flip = (u0 >= 0.0) ? 1.0 : -1.0;

  std::vector<ProfilePoint> pts;
  pts.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double x = closure.x1 * i / n_samples;
    const auto P = imm.point(x, 0.0);
    const double u = flip * P[3];
    if (std::fabs(1.0 + u) < 1e-12) continue;  // projection pole; skip
    ProfilePoint q;
    q.x = x;
    q.px = P[0] / (1.0 + u);
    q.py = P[1] / (1.0 + u);
    q.axis_distance = std::asin(std::clamp(u, -1.0, 1.0));
    pts.push_back(q);
  }

  // Cyclic local extrema of the axis distance mark bulges and necks.
  const size_t n = pts.size();
  if (!p.flat()) {
    for (size_t i = 0; i < n; ++i) {
      const double prev = pts[(i + n - 1) % n].axis_distance;
      const double cur = pts[i].axis_distance;
      const double next = pts[(i + 1) % n].axis_distance;
      if (cur > prev && cur >= next) pts[i].is_bulge = true;
      if (cur < prev && cur <= next) pts[i].is_neck = true;
    }
  }
  return pts;
}

}  // namespace cmctori
