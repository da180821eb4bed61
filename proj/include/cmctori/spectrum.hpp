#pragma once

#include <span>
#include <string>
#include <vector>

#include "cmctori/numerics.hpp"
#include "cmctori/surface.hpp"

namespace cmctori {

// ---------------------------------------------------------------------------
// Potential of the reduced stability operator on the profile circle,
//     q(x) = -2 v^2 - 32 s^2 t^2 v^{-2},
// sampled uniformly on [0, x1).  Constant -sec^2(gamma) in the flat case.

struct Potential {
  double period = 0.0;                 // x1
  int periods = 1;                     // k
  std::vector<double> samples;         // q on the uniform grid
  std::vector<ComplexValue> fourier;   // coefficients a_p, p = 0..samples/2
};

// n_samples must be a power of two >= 128 and resolve every period of v
// with at least 32 points.
Potential build_potential(const SurfaceParams& p, const ClosureData& closure,
                          int n_samples);

// ---------------------------------------------------------------------------
// 1-D spectrum of  -d^2/dx^2 + q  on the circle of circumference x1.

struct Spectrum1D {
  std::vector<double> eigenvalues;                // ascending, lowest block
  std::vector<std::vector<double>> eigenvectors;  // real Fourier coefficients
  int truncation = 0;                             // N (modes up to cos/sin N)
  double convergence_gap = 0.0;  // max |lambda(N) - lambda(N/2)| over reported
  double period = 0.0;
  int reported = 0;
};

// Galerkin discretization in the orthonormal real Fourier basis
// {1, cos(2 pi m x / x1), sin(2 pi m x / x1)}, m <= N; the kinetic part is
// diagonal and the potential enters through its Fourier coefficients.  The
// lowest `reported` eigenvalues (default 4k+8) are kept after verifying
// stability against the same solve at N/2.  Throws when the convergence gap
// exceeds tol.
Spectrum1D solve_spectrum_1d(const Potential& q, int N, double tol = 1e-6,
                             int reported = -1);

// Second-order central finite differences on a uniform n-point grid; the
// independent cross-check for the Galerkin route.
std::vector<double> solve_spectrum_fd(const Potential& q, int n_grid,
                                      int n_lowest);

// Samples of eigenvector j of `sp` on a uniform n-point grid over [0, x1).
std::vector<double> eigenfunction_samples(const Spectrum1D& sp, int j, int n);

// ---------------------------------------------------------------------------

// Max |(-d2/dx2 + q) u0| / max |u0| for u0 = v'/v, applied spectrally on the
// sample grid of q.  u0 spans the kernel on every non-flat closed surface.
double kernel_residual_u0(const SurfaceParams& p, const ClosureData& closure,
                          const Potential& q);

// Number of sign changes around the circle (even by periodicity).  Samples
// within 1e-8 of zero (relative to the max) are skipped.  Throws on an
// all-zero vector.
int count_sign_changes(std::span<const double> samples);

// ---------------------------------------------------------------------------
// Morse index and nullity of the two-dimensional operator assembled from
// the 1-D eigenvalues by separation of variables: each lambda_{j,0}
// contributes eigenvalues lambda_{j,0} + n^2 with multiplicity 2 for n >= 1
// and 1 for n = 0.

struct IndexReport {
  int below_minus_one = 0;   // # lambda < -1 - tol
  int between = 0;           // # lambda in (-1 + tol, -tol)
  int at_minus_one = 0;      // # |lambda + 1| <= tol
  int at_zero = 0;           // # |lambda| <= tol
  int index = 0;             // direct count over lambda_{j,0} + n^2
  int nullity = 0;
  int index_shortcut = 0;    // 3*below + 2 + between
  bool shortcut_agrees = false;
  double tol = 0.0;
  std::vector<std::string> warnings;
};

IndexReport assemble_index(const Spectrum1D& sp, double tol = 5e-3);

// True when exactly two eigenvalues lie within tol of -1.
bool verify_minus_one_pair(const Spectrum1D& sp, double tol = 5e-3);

}  // namespace cmctori
