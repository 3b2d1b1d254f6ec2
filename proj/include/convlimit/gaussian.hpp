#pragma once

#include <complex>
#include <span>
#include <vector>

#include "convlimit/error.hpp"

namespace convlimit {

using Complex = std::complex<double>;

/// Parameters for evaluating the inverse Fourier transform of
/// u -> exp(-beta u^{2 mu}) and its derivatives.
struct GeneralizedGaussianSpec {
  int mu;
  Complex beta;
  double truncation;  // integrate over [-U, U]
  double abs_tol;

  /// Picks the truncation so that exp(-Re(beta) U^{2 mu}) <= abs_tol / 100
  /// with extra headroom for the u^m weight up to max_derivative.
  GeneralizedGaussianSpec(int mu, Complex beta, double abs_tol = 1e-12,
                          int max_derivative = 16);
};

/// m-th derivative at x. Closed form for mu == 1, adaptive panel quadrature
/// otherwise. Even/odd symmetry in x is exact by construction.
Complex eval_H(const GeneralizedGaussianSpec& spec, int m, double x);

/// Quadrature path regardless of mu (the closed form checks against this).
Complex eval_H_quadrature(const GeneralizedGaussianSpec& spec, int m, double x);

/// Closed form for mu == 1 at any derivative order.
Complex eval_H_closed_form_mu1(Complex beta, int m, double x);

/// Batch evaluation over a grid; embarrassingly parallel, order-stable.
std::vector<Complex> eval_H_grid(const GeneralizedGaussianSpec& spec, int m,
                                 std::span<const double> xs, bool parallel = true);

/// Defect of the integration-by-parts recurrence at (m, x); small values
/// certify quadrature self-consistency.
double recurrence_residual(const GeneralizedGaussianSpec& spec, int m, double x);

struct EnvelopeFit {
  double C = 0.0;
  double c = 0.0;
  bool ok = false;
};

/// Smallest C with |H^{(m)}| <= C exp(-c |x|^{2mu/(2mu-1)}) over the grid,
/// at the fixed diagnostic rate c.
EnvelopeFit decay_envelope_check(const GeneralizedGaussianSpec& spec, int m,
                                 std::span<const double> x_grid);

/// The fixed diagnostic decay rate used by decay_envelope_check.
double envelope_decay_rate(int mu, Complex beta);

}  // namespace convlimit
