#include "convlimit/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "convlimit/bell.hpp"

namespace convlimit {

UnivariatePolynomial poly_mul(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  UnivariatePolynomial out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Complex{});
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return out;
}

UnivariatePolynomial poly_sub(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  UnivariatePolynomial out;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), Complex{});
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return out;
}

void BivariatePolynomial::add(int deg_x, int deg_y, Complex c) {
  if (c == Complex{}) return;
  auto key = std::make_pair(deg_x, deg_y);
  auto [it, inserted] = terms.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms.erase(it);
  }
}

double BivariatePolynomial::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

void BivariatePolynomial::prune(double rel_tol) {
  const double cutoff = rel_tol * max_abs();
  for (auto it = terms.begin(); it != terms.end();)
    it = (std::abs(it->second) <= cutoff) ? terms.erase(it) : std::next(it);
}

int BivariatePolynomial::max_y_degree() const {
  int m = 0;
  for (const auto& [k, c] : terms) m = std::max(m, k.second);
  return m;
}

bool BivariatePolynomial::is_zero(double tol) const {
  for (const auto& [k, c] : terms)
    if (std::abs(c) > tol) return false;
  return true;
}

ProofPolynomials build_proof_polynomials(const VarpiJet& jet, int s) {
  if (s < 1) throw Error(Errc::InvalidArgument, "expansion depth must be >= 1");
  const int mu = jet.point.mu;
  if (jet.order() < 2 * mu + s)
    throw Error(Errc::InsufficientJetOrder,
                "jet order " + std::to_string(jet.order()) + " below " +
                    std::to_string(2 * mu + s));

  const double alpha = jet.point.alpha;
  const double sgn = (alpha >= 0.0) ? 1.0 : -1.0;
  const Complex i_theta_tilde{0.0, jet.point.theta_tilde};

  ProofPolynomials out;
  out.P.coeffs.resize(static_cast<size_t>(s));
  double factorial = 1.0;
  for (int l = 0; l < s; ++l) {
    if (l > 0) factorial *= l;
    out.P.coeffs[static_cast<size_t>(l)] = -sgn * jet.deriv(l + 1) / factorial;
  }

  out.phi.coeffs.assign(static_cast<size_t>(2 * mu) + 1, Complex{});
  out.phi.coeffs[0] = i_theta_tilde;
  out.phi.coeffs[1] = -1.0 / alpha;
  const double mu_sign = (mu % 2 == 0) ? -1.0 : 1.0;  // (-1)^{mu+1}
  out.phi.coeffs[static_cast<size_t>(2 * mu)] =
      mu_sign * jet.point.beta / std::pow(alpha, 2 * mu + 1);

  out.Q.coeffs.assign(static_cast<size_t>(2 * mu + s), Complex{});
  out.Q.coeffs[0] = i_theta_tilde;
  factorial = 1.0;
  for (int l = 1; l <= 2 * mu + s - 1; ++l) {
    factorial *= l;
    out.Q.coeffs[static_cast<size_t>(l)] = jet.deriv(l) / factorial;
  }

  out.R = poly_sub(out.Q, out.phi);
  return out;
}

std::map<AKey, Complex> ledger_A(const UnivariatePolynomial& P, const UnivariatePolynomial& R,
                                 int s, int mu) {
  std::map<AKey, Complex> A;
  UnivariatePolynomial power{{Complex(1.0, 0.0)}};  // R^l
  double factorial = 1.0;
  for (int l = 0; l < s; ++l) {
    if (l > 0) {
      power = poly_mul(power, R);
      factorial *= l;
    }
    UnivariatePolynomial prod = poly_mul(P, power);
    double scale = 0.0;
    for (const Complex& c : prod.coeffs) scale = std::max(scale, std::abs(c));
    const double cut = 1e-12 * std::max(1.0, scale);
    const int m_lo = (2 * mu + 1) * l;
    const int m_hi = (2 * mu + s - 1) * l + s - 1;
    for (int m = 0; m <= prod.degree(); ++m) {
      const Complex c = prod.coeff(m) / factorial;
      if (m >= m_lo && m <= m_hi) {
        A[{l, m}] = c;
      } else if (std::abs(c) > cut) {
        throw Error(Errc::WindowViolation,
                    "coefficient (l=" + std::to_string(l) + ", m=" + std::to_string(m) +
                        ") outside the admissible window");
      }
    }
    // entries inside the window always exist, even when zero
    for (int m = m_lo; m <= m_hi; ++m) A.try_emplace({l, m}, Complex{});
  }
  return A;
}

Complex ledger_B(int mu, double alpha, int l, int k1, int k3) {
  if (l < 1) throw Error(Errc::InvalidArgument, "ledger index l must be >= 1");
  double factorial_k1 = 1.0;
  for (int i = 2; i <= k1; ++i) factorial_k1 *= i;
  double factorial_k3 = 1.0;
  for (int i = 2; i <= k3; ++i) factorial_k3 *= i;

  double sum = 0.0;
  for (int k2 = 0; k2 <= k1; ++k2) {
    double prod = 1.0;
    for (int k4 = 0; k4 < k3; ++k4)
      prod *= (static_cast<double>(l + k2) / (2.0 * mu) + k4);
    const double sign = ((k1 - k2) % 2 == 0) ? 1.0 : -1.0;
    sum += binomial(k1, k2) * sign * prod;
  }
  return sum / (factorial_k1 * factorial_k3 * std::pow(alpha, k3));
}

CoefficientLedger build_ledger(const VarpiJet& jet, int s) {
  const int mu = jet.point.mu;
  const double alpha = jet.point.alpha;
  if (std::abs(alpha) < 1e-12)
    throw Error(Errc::ZeroDrift, "expansion assembly needs a nonzero drift");

  const ProofPolynomials pp = build_proof_polynomials(jet, s);
  CoefficientLedger ledger;
  ledger.s = s;
  ledger.d = s + 1;
  ledger.A = ledger_A(pp.P, pp.R, s, mu);

  const double abs_alpha = std::abs(alpha);
  for (const auto& [key, a_coeff] : ledger.A) {
    const auto [l, m] = key;
    const int lB = m - 2 * mu * l + 1;
    const Complex weight = a_coeff * std::pow(alpha, m + l) * abs_alpha;
    for (int k1 = 0; k1 < ledger.d; ++k1) {
      for (int k3 = 0; k3 < ledger.d; ++k3) {
        auto bit = ledger.B.find({lB, k1, k3});
        if (bit == ledger.B.end())
          bit = ledger.B.emplace(BKey{lB, k1, k3}, ledger_B(mu, alpha, lB, k1, k3)).first;
        ledger.C[{l, m, k1, k3}] = weight * bit->second;
      }
    }
  }
  return ledger;
}

std::vector<BivariatePolynomial> assemble_expansion(const VarpiJet& jet, int s) {
  const int mu = jet.point.mu;
  const CoefficientLedger ledger = build_ledger(jet, s);

  std::vector<BivariatePolynomial> polys(static_cast<size_t>(s));
  for (const auto& [key, c] : ledger.C) {
    const auto [l, m, k1, k3] = key;
    const int sigma = m - 2 * mu * l + k3 * (2 * mu - 1) + 1;
    if (sigma < 1 || sigma > s) continue;
    polys[static_cast<size_t>(sigma - 1)].add(k1 + k3, m + k1, c);
  }
  for (BivariatePolynomial& p : polys) p.prune(1e-14);
  return polys;
}

BivariatePolynomial reduce_via_recurrence(const BivariatePolynomial& poly, int mu,
                                          Complex beta) {
  const double mu_sign = (mu % 2 == 0) ? 1.0 : -1.0;  // (-1)^mu
  const Complex lead = mu_sign * 2.0 * static_cast<double>(mu) * beta;

  BivariatePolynomial out;
  std::vector<std::tuple<int, int, Complex>> work;
  work.reserve(poly.terms.size());
  for (const auto& [k, c] : poly.terms) work.emplace_back(k.first, k.second, c);

  while (!work.empty()) {
    auto [dx, dy, c] = work.back();
    work.pop_back();
    if (dx == 0) {
      out.add(0, dy, c);
      continue;
    }
    // X Y^m -> (-1)^mu 2 mu beta Y^{m + 2mu - 1} - m Y^{m-1}
    work.emplace_back(dx - 1, dy + 2 * mu - 1, c * lead);
    if (dy >= 1) work.emplace_back(dx - 1, dy - 1, -c * static_cast<double>(dy));
  }
  out.prune(1e-14);
  return out;
}

}  // namespace convlimit
