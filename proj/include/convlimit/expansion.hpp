#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "convlimit/varpi.hpp"

namespace convlimit {

/// Polynomial in (tau - tau_k), ascending coefficients.
struct UnivariatePolynomial {
  std::vector<Complex> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  Complex coeff(int i) const noexcept {
    return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[static_cast<size_t>(i)]
                                                           : Complex{};
  }
  Complex eval(Complex t) const {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
};

UnivariatePolynomial poly_mul(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
UnivariatePolynomial poly_sub(const UnivariatePolynomial& a, const UnivariatePolynomial& b);

/// Element of C[X, Y]; key (degX, degY), zero coefficients never stored.
struct BivariatePolynomial {
  std::map<std::pair<int, int>, Complex> terms;

  void add(int deg_x, int deg_y, Complex c);
  /// Drops entries below rel_tol times the largest magnitude.
  void prune(double rel_tol = 1e-14);
  double max_abs() const;
  int max_y_degree() const;
  bool is_zero(double tol = 0.0) const;
};

struct ProofPolynomials {
  UnivariatePolynomial P;    // truncated derivative of the inverse phase, signed
  UnivariatePolynomial phi;  // drift + leading dissipation profile
  UnivariatePolynomial Q;    // inverse phase truncated at order 2mu+s-1
  UnivariatePolynomial R;    // Q - phi, vanishing through order 2mu
};

/// Requires jet order >= 2 mu + s.
ProofPolynomials build_proof_polynomials(const VarpiJet& jet, int s);

using AKey = std::pair<int, int>;            // (l, m)
using BKey = std::tuple<int, int, int>;      // (l, k1, k3)
using CKey = std::tuple<int, int, int, int>; // (l, m, k1, k3)

/// Coefficients of P * R^l / l! over the admissible m-window
/// [(2mu+1) l, (2mu+s-1) l + s - 1]. A non-negligible coefficient outside
/// the window raises WindowViolation.
std::map<AKey, Complex> ledger_A(const UnivariatePolynomial& P, const UnivariatePolynomial& R,
                                 int s, int mu);

/// Alternating-sum coefficient converting Y-scaled terms to X-scaled ones.
Complex ledger_B(int mu, double alpha, int l, int k1, int k3);

struct CoefficientLedger {
  std::map<AKey, Complex> A;
  std::map<BKey, Complex> B;
  std::map<CKey, Complex> C;
  int s = 0;
  int d = 0;  // always s + 1
};

CoefficientLedger build_ledger(const VarpiJet& jet, int s);

/// Expansion polynomials for sigma = 1..s (index sigma-1). Requires a
/// nonzero drift.
std::vector<BivariatePolynomial> assemble_expansion(const VarpiJet& jet, int s);

/// Rewrites away every X power using the integration-by-parts recurrence;
/// the returned polynomial acts identically on the generalized Gaussian.
BivariatePolynomial reduce_via_recurrence(const BivariatePolynomial& poly, int mu,
                                          Complex beta);

}  // namespace convlimit
