#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace cmctori {

using ComplexValue = std::complex<double>;

// ---------------------------------------------------------------------------
// Complete elliptic integral of the first kind, K(tau), for modulus
// tau in [0,1).  Arithmetic-geometric mean; converges quadratically,
// relative accuracy ~1e-15.  Throws std::domain_error outside [0,1).
double elliptic_K(double tau);

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

// Jacobi elliptic functions of real argument u and modulus tau in [0,1),
// by the descending Landen (AGM) transformation with backward phase
// recurrence.  dn lies in [sqrt(1-tau^2), 1] and has period 2 K(tau).
JacobiTriple jacobi_elliptic(double u, double tau);
double jacobi_dn(double u, double tau);

// ---------------------------------------------------------------------------
// Adaptive quadrature.

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7,K15).  Splits the worst interval until the
// summed error estimate is below tol (absolute) or the interval budget is
// exhausted; in the latter case converged=false and the best estimate is
// still returned.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-10);

// Single non-adaptive K15 panel; used for short smooth segments where one
// panel already reaches machine accuracy.
QuadratureResult integrate_panel(const std::function<double(double)>& f,
                                 double a, double b);

ComplexValue integrate_complex(const std::function<ComplexValue(double)>& f,
                               double a, double b, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Bracketed root finding (Brent).  Requires f(lo)*f(hi) <= 0; throws
// std::invalid_argument otherwise.  Stops when the bracket is narrower
// than tol.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

// ---------------------------------------------------------------------------
// Dense real symmetric eigensolver.

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

struct SymmetricSpectrum {
  std::vector<double> eigenvalues;                 // ascending
  std::vector<std::vector<double>> eigenvectors;   // eigenvectors[j] matches eigenvalues[j]
};

// Householder tridiagonalization followed by implicit-shift QL with
// eigenvector accumulation.  Eigenvalues ascending, eigenvectors
// orthonormal.  Rejects non-symmetric input (relative tolerance 1e-12).
SymmetricSpectrum sym_eigen(const DenseMatrix& m);

}  // namespace cmctori
