// Independent reference computations used by the tests. Everything here
// deliberately avoids the library's own algorithms: convolution by the
// naive double sum, Bell polynomials by partition enumeration, inverse-phase
// derivatives by root-finding plus a circular finite-difference stencil.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

#include "convlimit/sequence.hpp"
#include "convlimit/symbol.hpp"

namespace oracles {

using convlimit::Complex;
using convlimit::ComplexSequence;

// ---- naive convolution ---------------------------------------------------

inline std::map<int, Complex> to_map(const ComplexSequence& a) {
  std::map<int, Complex> m;
  for (int j = a.support_min(); j <= a.support_max(); ++j)
    if (a[j] != Complex{}) m[j] = a[j];
  return m;
}

inline std::map<int, Complex> convolve_naive(const std::map<int, Complex>& a,
                                             const std::map<int, Complex>& b) {
  std::map<int, Complex> out;
  for (const auto& [i, u] : a)
    for (const auto& [j, v] : b) out[i + j] += u * v;
  return out;
}

inline std::map<int, Complex> power_naive(const ComplexSequence& a, int n) {
  // n-fold convolution of the reflected sequence applied to the Dirac mass
  std::map<int, Complex> b;
  for (int j = a.support_min(); j <= a.support_max(); ++j)
    if (a[j] != Complex{}) b[-j] = a[j];
  std::map<int, Complex> g{{0, Complex(1.0, 0.0)}};
  for (int i = 0; i < n; ++i) g = convolve_naive(b, g);
  return g;
}

// ---- Bell polynomials by explicit partition enumeration --------------------

// Sum over integer vectors (l_1, ..., l_{n+1-j}) with sum l_i = j and
// sum i*l_i = n of n! / prod(l_i!) * prod (X_i / i!)^{l_i}.
inline Complex bell_enumerated(int n, int j, const std::vector<Complex>& args) {
  const int width = n + 1 - j;
  std::vector<int> l(static_cast<size_t>(width), 0);
  Complex total = 0.0;
  auto factorial = [](int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  // depth-first over l_1..l_width
  std::function<void(int, int, int)> rec = [&](int idx, int blocks_left, int weight_left) {
    if (idx == width) {
      if (blocks_left == 0 && weight_left == 0) {
        Complex term = factorial(n);
        for (int i = 0; i < width; ++i) {
          const int li = l[static_cast<size_t>(i)];
          if (li == 0) continue;
          term /= factorial(li);
          const Complex base = args[static_cast<size_t>(i)] / factorial(i + 1);
          for (int q = 0; q < li; ++q) term *= base;
        }
        total += term;
      }
      return;
    }
    const int imax = std::min(blocks_left, weight_left / (idx + 1));
    for (int li = 0; li <= imax; ++li) {
      l[static_cast<size_t>(idx)] = li;
      rec(idx + 1, blocks_left - li, weight_left - li * (idx + 1));
    }
    l[static_cast<size_t>(idx)] = 0;
  };
  rec(0, j, n);
  return total;
}

// ---- inverse-phase jet by root tracking + circular stencil ------------------

// Root of F(kappa) = z near seed, Newton with F' = M_1 / kappa.
inline Complex symbol_root(const ComplexSequence& a, Complex z, Complex seed) {
  Complex kappa = seed;
  for (int it = 0; it < 80; ++it) {
    const Complex f = convlimit::eval_symbol(a, kappa) - z;
    const Complex df = convlimit::moment(a, 1, kappa) / kappa;
    const Complex step = f / df;
    kappa -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(kappa))) break;
  }
  return kappa;
}

// Derivatives of tau -> log kappa(e^tau) at tau_k from samples on a circle of
// radius rho; an N-point circular finite-difference stencil of spectral order.
inline std::vector<Complex> inverse_phase_jet_fd(const ComplexSequence& a,
                                                 const convlimit::TangencyPoint& pt,
                                                 int max_order, double rho = 0.25,
                                                 int samples = 512) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Complex> values(static_cast<size_t>(samples));
  // Walk the circle with continuation so Newton stays on the branch through
  // kappa_k. If the circle encloses a branch point of the root, continuation
  // fails to close up; halve the radius until the monodromy is trivial.
  for (int attempt = 0;; ++attempt) {
    Complex seed = pt.kappa;
    Complex first_root = 0.0;
    for (int q = 0; q < samples; ++q) {
      const double th = two_pi * q / samples;
      const Complex tau = pt.tau + rho * Complex(std::cos(th), std::sin(th));
      const Complex kappa = symbol_root(a, std::exp(tau), seed);
      if (q == 0) first_root = kappa;
      seed = kappa;
      Complex lk = std::log(kappa);
      // keep the branch that stays near theta_tilde
      const double target = pt.theta_tilde;
      while (lk.imag() - target > std::numbers::pi) lk -= Complex(0.0, two_pi);
      while (lk.imag() - target < -std::numbers::pi) lk += Complex(0.0, two_pi);
      values[static_cast<size_t>(q)] = lk;
    }
    const Complex closure = symbol_root(a, std::exp(pt.tau + Complex(rho, 0.0)), seed);
    if (std::abs(closure - first_root) < 1e-10) break;
    if (attempt == 6) throw std::runtime_error("jet oracle: no branch-safe radius found");
    rho *= 0.5;
  }
  std::vector<Complex> derivs(static_cast<size_t>(max_order));
  double factorial = 1.0;
  for (int n = 1; n <= max_order; ++n) {
    factorial *= n;
    Complex acc = 0.0;
    for (int q = 0; q < samples; ++q) {
      const double th = two_pi * q / samples;
      acc += values[static_cast<size_t>(q)] *
             Complex(std::cos(-n * th), std::sin(-n * th));
    }
    derivs[static_cast<size_t>(n - 1)] =
        factorial * acc / (static_cast<double>(samples) * std::pow(rho, n));
  }
  return derivs;
}

// ---- misc -------------------------------------------------------------------

// Trapezoid integral of f over [-L, L], spectrally accurate for smooth decay.
template <typename F>
Complex trapezoid(F&& f, double L, int n) {
  const double h = 2.0 * L / n;
  Complex acc = 0.5 * (f(-L) + f(L));
  for (int i = 1; i < n; ++i) acc += f(-L + h * i);
  return h * acc;
}

// Both roots of the quadratic c2 k^2 + c1 k + c0 = 0.
inline std::pair<Complex, Complex> quadratic_roots(Complex c2, Complex c1, Complex c0) {
  const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  const Complex q = -0.5 * (c1 + (std::real(std::conj(c1) * disc) >= 0.0 ? disc : -disc));
  return {q / c2, c0 / q};
}

}  // namespace oracles
