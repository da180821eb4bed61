#include "cmctori/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmctori {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Direct-summation Fourier analysis of a real periodic sample vector:
// a_p = (1/n) sum_j f_j e^{-2 pi i p j / n}, p = 0..p_max.
std::vector<ComplexValue> fourier_coefficients(const std::vector<double>& f,
                                               int p_max) {
  const int n = static_cast<int>(f.size());
  std::vector<ComplexValue> a(p_max + 1);
  for (int p = 0; p <= p_max; ++p) {
    double re = 0.0, im = 0.0;
    const double w = -2.0 * kPi * p / n;
    for (int j = 0; j < n; ++j) {
      const double ang = w * j;
      re += f[j] * std::cos(ang);
      im += f[j] * std::sin(ang);
    }
    a[p] = ComplexValue(re / n, im / n);
  }
  return a;
}

}  // namespace

Potential build_potential(const SurfaceParams& p, const ClosureData& closure,
                          int n_samples) {
  if (!power_of_two(n_samples) || n_samples < 128)
    throw std::invalid_argument("n_samples must be a power of two >= 128");
  if (!p.flat() && n_samples < 32 * closure.k)
    throw std::invalid_argument("fewer than 32 samples per period of v");

  Potential q;
  q.period = closure.x1;
  q.periods = closure.k;
  q.samples.resize(n_samples);
  if (p.flat()) {
    const double cg = std::cos(p.gamma);
    std::fill(q.samples.begin(), q.samples.end(), -1.0 / (cg * cg));
  } else {
    const double s2t2 = p.s * p.s * p.t * p.t;
    for (int j = 0; j < n_samples; ++j) {
      const double x = closure.x1 * j / n_samples;
      const double v2 = std::pow(profile_v(p, x), 2);
      q.samples[j] = -2.0 * v2 - 32.0 * s2t2 / v2;
    }
  }
  q.fourier = fourier_coefficients(q.samples, n_samples / 2);
  return q;
}

Spectrum1D solve_spectrum_1d(const Potential& q, int N, double tol,
                             int reported) {
  if (N < 64) throw std::invalid_argument("truncation N must be >= 64");
  if (2 * N >= static_cast<int>(q.fourier.size()))
    throw std::invalid_argument("potential has too few Fourier coefficients for N");
  if (reported < 0) reported = 4 * q.periods + 8;

  const double x1 = q.period;
  auto alpha = [&q](int p) { return q.fourier[std::abs(p)].real(); };
  auto beta = [&q](int p) {
    const double b = q.fourier[std::abs(p)].imag();
    return p >= 0 ? b : -b;
  };

  // Basis index map: 0 -> constant, 2m-1 -> cos_m, 2m -> sin_m.
  auto build = [&](int modes) {
    const int dim = 2 * modes + 1;
    DenseMatrix H(dim);
    const double w0 = 2.0 * kPi / x1;
    H(0, 0) = alpha(0);
    for (int m = 1; m <= modes; ++m) {
      const int ic = 2 * m - 1, is = 2 * m;
      H(0, ic) = H(ic, 0) = std::sqrt(2.0) * alpha(m);
      H(0, is) = H(is, 0) = -std::sqrt(2.0) * beta(m);
      for (int n = m; n <= modes; ++n) {
        const int jc = 2 * n - 1, js = 2 * n;
        const double kin = (m == n) ? (w0 * m) * (w0 * m) : 0.0;
        H(ic, jc) = H(jc, ic) = alpha(m - n) + alpha(m + n) + kin;
        H(is, js) = H(js, is) = alpha(m - n) - alpha(m + n) + kin;
        H(ic, js) = H(js, ic) = beta(m - n) - beta(m + n);
        if (m != n) H(is, jc) = H(jc, is) = beta(n - m) - beta(n + m);
      }
    }
    return sym_eigen(H);
  };

  SymmetricSpectrum full = build(N);
  SymmetricSpectrum half = build(N / 2);

  Spectrum1D out;
  out.truncation = N;
  out.period = x1;
  out.reported = std::min<int>(reported, static_cast<int>(full.eigenvalues.size()));
  out.eigenvalues.assign(full.eigenvalues.begin(),
                         full.eigenvalues.begin() + out.reported);
  out.eigenvectors.assign(full.eigenvectors.begin(),
                          full.eigenvectors.begin() + out.reported);
  double gap = 0.0;
  for (int j = 0; j < out.reported; ++j)
    gap = std::max(gap, std::fabs(full.eigenvalues[j] - half.eigenvalues[j]));
  out.convergence_gap = gap;
  if (gap > tol)
    throw std::runtime_error(
        "solve_spectrum_1d: eigenvalues not converged at this truncation; "
        "increase N");
  return out;
}

std::vector<double> solve_spectrum_fd(const Potential& q, int n_grid,
                                      int n_lowest) {
  const int nq = static_cast<int>(q.samples.size());
  const double h = q.period / n_grid;
  const double ih2 = 1.0 / (h * h);
  DenseMatrix H(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    // Potential sampled at the FD grid point (grids are commensurate when
    // n_grid divides or is divided by the sample count; resample otherwise).
    const double x = q.period * i / n_grid;
    const double pos = x / q.period * nq;
    const int j0 = static_cast<int>(pos) % nq;
    double qi;
    if (std::fabs(pos - std::round(pos)) < 1e-9) {
      qi = q.samples[static_cast<int>(std::round(pos)) % nq];
    } else {  // linear interpolation fallback
      const double fr = pos - std::floor(pos);
      qi = (1.0 - fr) * q.samples[j0] + fr * q.samples[(j0 + 1) % nq];
    }
    H(i, i) = 2.0 * ih2 + qi;
    H(i, (i + 1) % n_grid) -= ih2;
    H((i + 1) % n_grid, i) -= ih2;
  }
  SymmetricSpectrum sp = sym_eigen(H);
  sp.eigenvalues.resize(std::min<size_t>(n_lowest, sp.eigenvalues.size()));
  return sp.eigenvalues;
}

std::vector<double> eigenfunction_samples(const Spectrum1D& sp, int j, int n) {
  const auto& c = sp.eigenvectors.at(j);
  const int modes = (static_cast<int>(c.size()) - 1) / 2;
  const double x1 = sp.period;
  std::vector<double> u(n);
  const double norm0 = 1.0 / std::sqrt(x1);
  const double norm = std::sqrt(2.0 / x1);
  for (int i = 0; i < n; ++i) {
    const double x = x1 * i / n;
    double val = c[0] * norm0;
    for (int m = 1; m <= modes; ++m) {
      const double ang = 2.0 * kPi * m * x / x1;
      val += norm * (c[2 * m - 1] * std::cos(ang) + c[2 * m] * std::sin(ang));
    }
    u[i] = val;
  }
  return u;
}

double kernel_residual_u0(const SurfaceParams& p, const ClosureData& closure,
                          const Potential& q) {
  if (p.flat())
    throw std::domain_error("u0 = v'/v vanishes identically on flat surfaces");
  const int n = static_cast<int>(q.samples.size());
  std::vector<double> u0(n);
  for (int j = 0; j < n; ++j) {
    const double x = closure.x1 * j / n;
    u0[j] = profile_v_prime(p, x) / profile_v(p, x);
  }
  // -u0'' by Fourier differentiation (direct sums; n is moderate).
  const int p_max = n / 2;
  std::vector<ComplexValue> a = fourier_coefficients(u0, p_max);
  std::vector<double> lap(n, 0.0);
  const double w0 = 2.0 * kPi / closure.x1;
  for (int i = 0; i < n; ++i) {
    const double x0 = 2.0 * kPi * i / n;
    double acc = (w0 * 0.0) * a[0].real();
    for (int pp = 1; pp < p_max; ++pp) {
      const double k2 = (w0 * pp) * (w0 * pp);
      acc += 2.0 * k2 * (a[pp].real() * std::cos(pp * x0) - a[pp].imag() * std::sin(pp * x0));
    }
    // Nyquist term (real for even n).
    const double k2 = (w0 * p_max) * (w0 * p_max);
    acc += k2 * a[p_max].real() * std::cos(p_max * x0);
    lap[i] = acc;  // = -u0'' sampled
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num = std::max(num, std::fabs(lap[i] + q.samples[i] * u0[i]));
    den = std::max(den, std::fabs(u0[i]));
  }
  return num / den;
}

int count_sign_changes(std::span<const double> samples) {
  double amax = 0.0;
  for (double v : samples) amax = std::max(amax, std::fabs(v));
  if (amax == 0.0) throw std::invalid_argument("count_sign_changes: zero vector");
  const double eps = 1e-8 * amax;

  int changes = 0;
  int prev = 0;
  int first = 0;
  for (double v : samples) {
    if (std::fabs(v) <= eps) continue;
    const int sgn = v > 0.0 ? 1 : -1;
    if (prev != 0 && sgn != prev) ++changes;
    if (first == 0) first = sgn;
    prev = sgn;
  }
  if (prev != 0 && first != 0 && prev != first) ++changes;  // wrap around
  return changes;
}

IndexReport assemble_index(const Spectrum1D& sp, double tol) {
  IndexReport r;
  r.tol = tol;
  const auto& lam = sp.eigenvalues;

  for (double l : lam) {
    if (l < -1.0 - tol) ++r.below_minus_one;
    if (l > -1.0 + tol && l < -tol) ++r.between;
    if (std::fabs(l + 1.0) <= tol) ++r.at_minus_one;
    if (std::fabs(l) <= tol) ++r.at_zero;
  }

  // Direct 2-D count; eigenvalues within tol of any -n^2 count as kernel.
  for (double l : lam) {
    if (l < -tol) {
      int negatives = 0;
      for (int n = 1; n * n < -l + 1.0; ++n)
        if (l + n * n < -tol) ++negatives;
      r.index += 1 + 2 * negatives;
    }
    for (int n = 1; n * n <= -l + 1.0; ++n)
      if (std::fabs(l + n * n) <= tol) r.nullity += 2;
  }
  r.nullity += r.at_zero;

  r.index_shortcut = 3 * r.below_minus_one + 2 + r.between;
  r.shortcut_agrees = (r.index_shortcut == r.index);

  // Boundary diagnostics: eigenvalues just outside the classification bands.
  for (double l : lam) {
    const double d1 = std::fabs(l + 1.0), d0 = std::fabs(l);
    if ((d1 > tol && d1 < 2.0 * tol) || (d0 > tol && d0 < 2.0 * tol))
      r.warnings.push_back("eigenvalue near classification boundary: " +
                           std::to_string(l));
  }
  if (r.at_minus_one != 2)
    r.warnings.push_back("expected a double eigenvalue at -1, found " +
                         std::to_string(r.at_minus_one));
  return r;
}

bool verify_minus_one_pair(const Spectrum1D& sp, double tol) {
  int n = 0;
  for (double l : sp.eigenvalues)
    if (std::fabs(l + 1.0) <= tol) ++n;
  return n == 2;
}

}  // namespace cmctori
