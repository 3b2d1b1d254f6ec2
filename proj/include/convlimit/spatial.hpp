#pragma once

#include <map>
#include <vector>

#include "convlimit/sequence.hpp"

namespace convlimit {

/// Dense companion matrix of the resolvent recurrence at z, size (p+r).
/// Row 0 holds -A_{p-1}/A_p ... -A_{-r}/A_p with A_j(z) = z delta_{j,0} - a_j.
struct CompanionMatrix {
  Complex z;
  int r = 0, p = 0;
  std::vector<Complex> entries;  // row-major (p+r) x (p+r)

  int dim() const noexcept { return r + p; }
  Complex at(int row, int col) const { return entries[static_cast<size_t>(row * dim() + col)]; }
};

/// Throws InvalidArgument when |z| is inside the margin where the boundary
/// coefficients could vanish.
CompanionMatrix companion_matrix(const ComplexSequence& a, Complex z);

struct SpectralSplit {
  int n_stable = 0;
  int n_unit = 0;
  int n_unstable = 0;
  double max_symbol_residual = 0.0;  // max_i |F(kappa_i) - z|
};

/// Eigenvalues of the companion matrix classified against the unit circle.
/// Every eigenvalue must satisfy F(kappa) = z within sym_tol.
SpectralSplit spectral_split(const ComplexSequence& a, Complex z, double eps_unit = 1e-6,
                             double sym_tol = 1e-9);

struct SpatialGreen {
  Complex z;
  int j_min = 0, j_max = 0;
  std::vector<Complex> values;  // index j - j_min
  double residual = 0.0;        // max_j |sum_l A_l(z) G_{j+l} - delta_{j,0}|

  Complex at(int j) const {
    if (j < j_min || j > j_max) throw Error(Errc::IndexOutOfRange, "outside computed window");
    return values[static_cast<size_t>(j - j_min)];
  }
};

/// Resolvent kernel at z off the spectrum, by periodic quadrature of the
/// Fourier inversion. The defect of the resolvent identity over the window
/// is certified below tol before returning.
SpatialGreen spatial_green(const ComplexSequence& a, Complex z, int j_min, int j_max,
                           double tol = 1e-10);

/// (1/2 i pi) contour integral of z^n G_j(z) over |z| = radius, trapezoid
/// rule with quad_points nodes. Requires radius > 1, quad_points >= 64.
Complex contour_reconstruct(const ComplexSequence& a, int n, int j, double radius,
                            int quad_points, double tol = 1e-10);

/// Same contour integral for all powers up to n_max over a j-window, sharing
/// one resolvent evaluation per node. result[n] covers [j_min, j_max].
std::vector<std::vector<Complex>> contour_reconstruct_table(const ComplexSequence& a, int n_max,
                                                            double radius, int quad_points,
                                                            int j_min, int j_max,
                                                            double tol = 1e-10,
                                                            bool parallel = true);

}  // namespace convlimit
