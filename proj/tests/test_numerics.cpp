#include "cmctori/numerics.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace cmctori;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("elliptic_K at tau = 0 is pi/2") {
  CHECK(elliptic_K(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("elliptic_K rejects out-of-range moduli") {
  CHECK_THROWS_AS(elliptic_K(1.0), std::domain_error);
  CHECK_THROWS_AS(elliptic_K(-0.1), std::domain_error);
  CHECK_THROWS_AS(elliptic_K(1.5), std::domain_error);
}

TEST_CASE("elliptic_K agrees with direct quadrature of the defining integral") {
  for (double tau : {0.0, 0.3, 0.6, 0.9, 0.99}) {
    const double ref = oracles::elliptic_K_quadrature(tau);
    CHECK(std::fabs(elliptic_K(tau) - ref) < 1e-10);
  }
}

TEST_CASE("elliptic_K near tau = 1 grows logarithmically") {
  const double tau = 1.0 - 1e-12;
  const double K = elliptic_K(tau);
  CHECK(K > 14.0);
  CHECK(std::isfinite(K));
  const double tau_c = std::sqrt((1.0 - tau) * (1.0 + tau));
  CHECK(std::fabs(K - std::log(4.0 / tau_c)) < 1e-6);
}

TEST_CASE("jacobi_dn special values") {
  for (double u : {-3.0, 0.0, 0.7, 12.5}) CHECK(jacobi_dn(u, 0.0) == 1.0);
  for (double tau : {0.1, 0.5, 0.92}) CHECK(jacobi_dn(0.0, tau) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(jacobi_dn(1.0, 1.0), std::domain_error);
}

TEST_CASE("jacobi_dn at the quarter period equals sqrt(1-tau^2), vs ODE") {
  for (double tau : {0.3, 0.7, 0.92}) {
    const double K = elliptic_K(tau);
    const double dn = jacobi_dn(K, tau);
    CHECK(dn == doctest::Approx(std::sqrt(1.0 - tau * tau)).epsilon(1e-12));
    CHECK(std::fabs(dn - oracles::dn_by_ode(K, tau)) < 1e-9);
  }
}

TEST_CASE("jacobi_dn against the ODE oracle at scattered arguments") {
  for (double tau : {0.4, 0.85}) {
    for (double u : {0.3, 1.1, 2.6}) {
      CHECK(std::fabs(jacobi_dn(u, tau) - oracles::dn_by_ode(u, tau)) < 1e-9);
    }
  }
}

TEST_CASE("jacobi_dn periodicity and the sn identity") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> uu(-8.0, 8.0), ut(0.05, 0.95);
  for (int i = 0; i < 200; ++i) {
    const double u = uu(rng), tau = ut(rng);
    const double K = elliptic_K(tau);
    CHECK(std::fabs(jacobi_dn(u + 2 * K, tau) - jacobi_dn(u, tau)) < 1e-10);
    const double dn = jacobi_dn(u, tau);
    const double sn2 = (1.0 - dn * dn) / (tau * tau);
    CHECK(sn2 > -1e-10);
    CHECK(sn2 < 1.0 + 1e-10);
    const auto j = jacobi_elliptic(u, tau);
    CHECK(std::fabs(j.dn * j.dn + tau * tau * j.sn * j.sn - 1.0) < 1e-10);
    CHECK(std::fabs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-10);
  }
}

TEST_CASE("integrate: arcsine integral with endpoint substitution") {
  // int_0^1 dx/sqrt(1-x^2) = pi/2; substituted form is the constant 1.
  auto direct = integrate([](double x) { return 1.0 / std::sqrt((1.0 - x) * (1.0 + x)); },
                          0.0, 1.0, 1e-8);
  CHECK(std::fabs(direct.value - kPi / 2) < 1e-7);
  auto substituted = integrate([](double) { return 1.0; }, 0.0, kPi / 2, 1e-12);
  CHECK(substituted.value == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("integrate: constant integrand over a period-like interval") {
  const double x0 = 2.3871;
  auto r = integrate([](double) { return 0.75; }, 0.0, x0, 1e-12);
  CHECK(r.value == doctest::Approx(0.75 * x0).epsilon(1e-14));
  CHECK(r.converged);
}

TEST_CASE("integrate: sin^2 over a full period") {
  auto r = integrate([](double x) { return std::sin(x) * std::sin(x); }, 0.0,
                     2 * kPi, 1e-11);
  CHECK(r.value == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("integrate is exact on low-degree polynomials") {
  auto r = integrate([](double x) { return ((5 * x - 4) * x * x + 2) * x * x - x + 3; },
                     -1.3, 2.7, 1e-10);
  // integrand is 5x^5 - 4x^4 + 2x^2 - x + 3
  auto F = [](double x) {
    return 5.0 / 6 * std::pow(x, 6) - 4.0 / 5 * std::pow(x, 5) +
           2.0 / 3 * std::pow(x, 3) - 0.5 * x * x + 3 * x;
  };
  const double exact = F(2.7) - F(-1.3);
  CHECK(std::fabs(r.value - exact) < 1e-13 * std::fabs(exact));
}

TEST_CASE("integrate reports error estimates and evaluation counts") {
  auto r = integrate([](double x) { return std::exp(-x * x); }, -4.0, 4.0, 1e-12);
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate <= 1e-12);
  CHECK(r.evaluations >= 15);
  CHECK(r.converged);
}

TEST_CASE("find_root: sqrt(2) and pi/2") {
  auto root = find_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-14);
  CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  auto root2 = find_root([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-14);
  CHECK(root2 == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("find_root requires a sign change") {
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                  std::invalid_argument);
}

TEST_CASE("sym_eigen: identity and a permuted diagonal") {
  DenseMatrix id(5);
  for (int i = 0; i < 5; ++i) id(i, i) = 1.0;
  auto sp = sym_eigen(id);
  for (double l : sp.eigenvalues) CHECK(l == doctest::Approx(1.0).epsilon(1e-14));

  DenseMatrix d(3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  auto sp2 = sym_eigen(d);
  CHECK(sp2.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sp2.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(sp2.eigenvalues[2] == doctest::Approx(3.0));
  CHECK(std::fabs(sp2.eigenvectors[0][1]) == doctest::Approx(1.0));
  CHECK(std::fabs(sp2.eigenvectors[1][2]) == doctest::Approx(1.0));
  CHECK(std::fabs(sp2.eigenvectors[2][0]) == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen rejects non-symmetric input") {
  DenseMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 2.0;
  CHECK_THROWS_AS(sym_eigen(m), std::invalid_argument);
}

TEST_CASE("sym_eigen invariants on a random symmetric matrix") {
  std::mt19937 rng(77);
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = 40;
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = g(rng);
      m(i, j) = m(j, i) = v;
    }
  auto sp = sym_eigen(m);

  double trace = 0.0, sum = 0.0, mnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    trace += m(i, i);
    for (int j = 0; j < n; ++j) mnorm = std::max(mnorm, std::fabs(m(i, j)));
  }
  for (double l : sp.eigenvalues) sum += l;
  CHECK(std::fabs(trace - sum) < 1e-9 * std::max(1.0, std::fabs(trace)));

  for (int a = 0; a < n; ++a) {
    CHECK(sp.eigenvalues[std::max(0, a - 1)] <= sp.eigenvalues[a] + 1e-14);
    // orthonormality
    for (int b = a; b < n; ++b) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += sp.eigenvectors[a][i] * sp.eigenvectors[b][i];
      CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
    }
    // residual  ||M v - lambda v||
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      double mv = 0.0;
      for (int j = 0; j < n; ++j) mv += m(i, j) * sp.eigenvectors[a][j];
      res = std::max(res, std::fabs(mv - sp.eigenvalues[a] * sp.eigenvectors[a][i]));
    }
    CHECK(res <= 1e-9 * (mnorm * n + std::fabs(sp.eigenvalues[a])));
  }
}

TEST_CASE("sym_eigen: free circle Laplacian has the Fourier spectrum") {
  // second-order periodic FD matrix eigenvalues (4/h^2) sin^2(pi m / n)
  const int n = 64;
  const double h = 2 * kPi / n;
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2.0 / (h * h);
    m(i, (i + 1) % n) -= 1.0 / (h * h);
    m((i + 1) % n, i) -= 1.0 / (h * h);
  }
  auto sp = sym_eigen(m);
  CHECK(std::fabs(sp.eigenvalues[0]) < 1e-10);
  // discrete dispersion for the first pair
  const double l1 = 4.0 / (h * h) * std::pow(std::sin(kPi / n), 2);
  CHECK(sp.eigenvalues[1] == doctest::Approx(l1).epsilon(1e-10));
  CHECK(sp.eigenvalues[2] == doctest::Approx(l1).epsilon(1e-10));
}
