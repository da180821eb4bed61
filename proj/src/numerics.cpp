#include "cmctori/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmctori {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_modulus(double tau) {
  if (!(tau >= 0.0) || tau >= 1.0)
    throw std::domain_error("elliptic modulus must lie in [0,1)");
}

}  // namespace

double elliptic_K(double tau) {
  check_modulus(tau);
  double a = 1.0;
  double b = std::sqrt((1.0 - tau) * (1.0 + tau));
  // Quadratic convergence; the cap guards against a 1-ulp stall.
  for (int i = 0; i < 40 && std::fabs(a - b) > 4e-16 * a; ++i) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return kPi / (2.0 * a);
}

JacobiTriple jacobi_elliptic(double u, double tau) {
  check_modulus(tau);
  if (tau == 0.0) return {std::sin(u), std::cos(u), 1.0};

  // AGM scale chain a_i, b_i, c_i.
  constexpr int kMaxLevels = 32;
  double av[kMaxLevels], cv[kMaxLevels];
  double a = 1.0, b = std::sqrt((1.0 - tau) * (1.0 + tau));
  av[0] = a;
  cv[0] = tau;
  int n = 0;
  while (cv[n] > 1e-17 * av[n] && n + 1 < kMaxLevels) {
    ++n;
    const double am = 0.5 * (a + b);
    cv[n] = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = am;
    av[n] = a;
  }

  // Reduce by the real period 4K to keep the doubled phase well scaled.
  const double K = kPi / (2.0 * a);
  u = std::remainder(u, 4.0 * K);

  double phi = std::ldexp(1.0, n) * a * u;
  double phi_prev = phi;  // phi_{1} once the loop reaches i==1
  for (int i = n; i >= 1; --i) {
    const double arg = std::clamp(cv[i] / av[i] * std::sin(phi), -1.0, 1.0);
    phi_prev = phi;
    phi = 0.5 * (phi + std::asin(arg));
  }

  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  double dn;
  if (n >= 1) {
    dn = cn / std::cos(phi_prev - phi);
  } else {
    dn = 1.0;
  }
  // The square-root identity is better conditioned away from tau -> 1.
  const double dn2 = 1.0 - tau * tau * sn * sn;
  if (dn2 > 0.0) dn = std::sqrt(dn2) * (dn < 0.0 ? -1.0 : 1.0);
  return {sn, cn, dn};
}

double jacobi_dn(double u, double tau) { return jacobi_elliptic(u, tau).dn; }

// ---------------------------------------------------------------------------
// Gauss-Kronrod (G7,K15) panel.  Nodes and weights on [-1,1].

namespace {

const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double value;
  double error;
};

PanelResult kronrod_panel(const std::function<double(double)>& f, double a,
                          double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  // A non-finite sample (integrable endpoint singularity at roundoff
  // distance) contributes nothing but forces further subdivision.
  bool finite = true;
  for (double& v : fv)
    if (!std::isfinite(v)) {
      v = 0.0;
      finite = false;
    }
  if (!finite) {
    double resk = kWgk[7] * fv[7];
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    return {resk * h, std::fabs(resk * h) + std::fabs(h)};
  }

  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::fabs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    const double sum = fv[i] + fv[14 - i];
    resk += kWgk[i] * sum;
    resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    if (i % 2 == 1) resg += kWg[i / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));

  const double value = resk * h;
  double err = std::fabs((resk - resg) * h);
  resasc *= std::fabs(h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round = 50.0 * 2.22e-16 * resabs * std::fabs(h);
  err = std::max(err, round);
  return {value, err};
}

}  // namespace

QuadratureResult integrate_panel(const std::function<double(double)>& f,
                                 double a, double b) {
  const PanelResult p = kronrod_panel(f, a, b);
  return {p.value, p.error, 15, true};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  if (a == b) return {0.0, 0.0, 0, true};

  struct Interval {
    double a, b, value, error;
    bool frozen;  // too narrow to split further
  };
  constexpr int kMaxIntervals = 4096;

  std::vector<Interval> segs;
  segs.reserve(128);
  PanelResult first = kronrod_panel(f, a, b);
  segs.push_back({a, b, first.value, first.error, false});
  long evals = 15;

  auto total_error = [&segs] {
    double e = 0.0;
    for (const auto& s : segs) e += s.error;
    return e;
  };

  while (total_error() > tol && static_cast<int>(segs.size()) < kMaxIntervals) {
    // Split the live interval with the largest error estimate.
    int worst = -1;
    for (size_t i = 0; i < segs.size(); ++i)
      if (!segs[i].frozen && (worst < 0 || segs[i].error > segs[worst].error))
        worst = static_cast<int>(i);
    if (worst < 0) break;
    const Interval seg = segs[worst];
    const double mid = 0.5 * (seg.a + seg.b);
    if (mid <= seg.a || mid >= seg.b) {  // width at roundoff floor
      segs[worst].frozen = true;
      continue;
    }
    PanelResult left = kronrod_panel(f, seg.a, mid);
    PanelResult right = kronrod_panel(f, mid, seg.b);
    evals += 30;
    segs[worst] = {seg.a, mid, left.value, left.error, false};
    segs.push_back({mid, seg.b, right.value, right.error, false});
  }

  QuadratureResult out;
  // Compensated sum keeps long subdivision lists from losing digits.
  double sum = 0.0, comp = 0.0;
  for (const auto& s : segs) {
    const double y = s.value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  out.value = sum;
  out.error_estimate = total_error();
  out.evaluations = evals;
  out.converged = out.error_estimate <= tol;
  return out;
}

ComplexValue integrate_complex(const std::function<ComplexValue(double)>& f,
                               double a, double b, double tol) {
  const double re = integrate([&f](double x) { return f(x).real(); }, a, b, tol).value;
  const double im = integrate([&f](double x) { return f(x).imag(); }, a, b, tol).value;
  return {re, im};
}

// ---------------------------------------------------------------------------
// Brent's method (van Wijngaarden-Dekker-Brent).

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("find_root: no sign change over bracket");

  double c = a, fc = fa;
  double d = b - a, e = d;
  constexpr int kMaxIter = 200;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.22e-16 * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  throw std::runtime_error("find_root: iteration limit reached");
}

// ---------------------------------------------------------------------------
// Symmetric eigensolver: Householder reduction + implicit-shift QL.
// The transform accumulator is kept transposed so QL's plane rotations
// run along contiguous rows.

namespace {

double hypot2(double a, double b) {
  const double absa = std::fabs(a), absb = std::fabs(b);
  if (absa > absb) {
    const double r = absb / absa;
    return absa * std::sqrt(1.0 + r * r);
  }
  return absb == 0.0 ? 0.0 : absb * std::sqrt(1.0 + (absa / absb) * (absa / absb));
}

// Reduce symmetric h (destroyed) to tridiagonal (d, e); zt accumulates the
// transform with eigenvectors of the tridiagonal problem as rows.
void tridiagonalize(std::vector<double>& h, int n, std::vector<double>& d,
                    std::vector<double>& e, std::vector<double>& zt) {
  auto H = [&h, n](int i, int j) -> double& { return h[static_cast<size_t>(i) * n + j]; };
  auto Z = [&zt, n](int i, int j) -> double& { return zt[static_cast<size_t>(i) * n + j]; };

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double hsc = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(H(i, k));
      if (scale == 0.0) {
        e[i] = H(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          H(i, k) /= scale;
          hsc += H(i, k) * H(i, k);
        }
        double f = H(i, l);
        double g = f >= 0.0 ? -std::sqrt(hsc) : std::sqrt(hsc);
        e[i] = scale * g;
        hsc -= f * g;
        H(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          H(j, i) = H(i, j) / hsc;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += H(j, k) * H(i, k);
          for (int k = j + 1; k <= l; ++k) g += H(k, j) * H(i, k);
          e[j] = g / hsc;
          f += e[j] * H(i, j);
        }
        const double hh = f / (hsc + hsc);
        for (int j = 0; j <= l; ++j) {
          f = H(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) H(j, k) -= f * e[k] + g * H(i, k);
        }
      }
    } else {
      e[i] = H(i, l);
    }
    d[i] = hsc;
  }
  d[0] = 0.0;
  e[0] = 0.0;

  // Accumulate the product of reflectors; Z starts as the identity.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = (i == j) ? 1.0 : 0.0;

  std::vector<double> uoverh(n);
  for (int i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (int k = 0; k < i; ++k) uoverh[k] = H(k, i);
      for (int j = 0; j < i; ++j) {
        double g = 0.0;
        for (int k = 0; k < i; ++k) g += H(i, k) * Z(j, k);
        for (int k = 0; k < i; ++k) Z(j, k) -= g * uoverh[k];
      }
    }
    d[i] = H(i, i);
  }
}

void ql_implicit(std::vector<double>& d, std::vector<double>& e, int n,
                 std::vector<double>& zt) {
  auto Z = [&zt, n](int i, int j) -> double& { return zt[static_cast<size_t>(i) * n + j]; };

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 2.22e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 50)
          throw std::runtime_error("sym_eigen: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          double* zi = &Z(i, 0);
          double* zj = &Z(i + 1, 0);
          for (int k = 0; k < n; ++k) {
            f = zj[k];
            zj[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

SymmetricSpectrum sym_eigen(const DenseMatrix& m) {
  const int n = m.size();
  if (n == 0) return {};

  double amax = 0.0, asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      amax = std::max(amax, std::fabs(m(i, j)));
      asym = std::max(asym, std::fabs(m(i, j) - m(j, i)));
    }
  if (asym > 1e-12 * std::max(amax, 1.0))
    throw std::invalid_argument("sym_eigen: input matrix is not symmetric");

  std::vector<double> h(m.data());
  std::vector<double> d(n), e(n), zt(static_cast<size_t>(n) * n);
  tridiagonalize(h, n, d, e, zt);
  ql_implicit(d, e, n, zt);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&d](int a, int b) { return d[a] < d[b]; });

  SymmetricSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.eigenvalues[j] = d[src];
    out.eigenvectors[j].assign(zt.begin() + static_cast<size_t>(src) * n,
                               zt.begin() + static_cast<size_t>(src + 1) * n);
  }
  return out;
}

}  // namespace cmctori
