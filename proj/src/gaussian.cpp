#include "convlimit/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "convlimit/kernels.hpp"

namespace convlimit {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussLegendre {
  std::array<double, 16> node, weight;
};

// 16-point rule on [-1, 1], nodes by Newton on the Legendre recurrence.
const GaussLegendre& gl16() {
  static const GaussLegendre rule = [] {
    GaussLegendre r{};
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double step = p1 / dp;
        x -= step;
        if (std::abs(step) < 1e-16) break;
      }
      r.node[static_cast<size_t>(i)] = x;
      r.weight[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

inline double pow_int(double b, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

// integrand of the defining integral, without the 1/(2 pi) factor:
// (i u)^m exp(i x u - beta u^{2 mu})
struct Integrand {
  int m;
  int two_mu;
  double beta_re, beta_im;
  double x;

  Complex operator()(double u) const {
    const double v = pow_int(u, two_mu);
    const double damp = std::exp(-beta_re * v);
    const double phase = x * u - beta_im * v;
    const Complex osc{damp * std::cos(phase), damp * std::sin(phase)};
    const double um = pow_int(u, m);
    switch (m & 3) {  // i^m
      case 0: return um * osc;
      case 1: return um * Complex(-osc.imag(), osc.real());
      case 2: return -um * osc;
      default: return um * Complex(osc.imag(), -osc.real());
    }
  }
};

struct PanelValue {
  Complex value;
  double magnitude;  // integral of |f|, same rule
};

PanelValue gl_panel(const Integrand& f, double a, double b) {
  const GaussLegendre& r = gl16();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex acc = 0.0;
  double mag = 0.0;
  for (int i = 0; i < 16; ++i) {
    const Complex v = f(mid + half * r.node[static_cast<size_t>(i)]);
    acc += r.weight[static_cast<size_t>(i)] * v;
    mag += r.weight[static_cast<size_t>(i)] * std::abs(v);
  }
  return {half * acc, half * mag};
}

Complex adapt_panel(const Integrand& f, double a, double b, const PanelValue& whole,
                    double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const PanelValue left = gl_panel(f, a, mid);
  const PanelValue right = gl_panel(f, mid, b);
  const Complex refined = left.value + right.value;
  // The roundoff floor of the panel sum scales with the magnitude integral;
  // refusing to refine below it avoids chasing noise. The noise of the
  // whole-vs-halves comparison measures ~50 eps * magnitude, and halving a
  // panel halves both sides, so the ratio is depth-invariant.
  const double floor = 256.0 * std::numeric_limits<double>::epsilon() *
                       (left.magnitude + right.magnitude);
  if (std::abs(refined - whole.value) <= std::max(tol, floor)) return refined;
  if (depth >= 30)
    throw Error(Errc::QuadratureNonConvergence,
                "panel refinement stalled on [" + std::to_string(a) + ", " + std::to_string(b) +
                    "] diff=" + std::to_string(std::abs(refined - whole.value)) +
                    " tol=" + std::to_string(std::max(tol, floor)));
  return adapt_panel(f, a, mid, left, 0.5 * tol, depth + 1) +
         adapt_panel(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

GeneralizedGaussianSpec::GeneralizedGaussianSpec(int mu_, Complex beta_, double abs_tol_,
                                                 int max_derivative)
    : mu(mu_), beta(beta_), truncation(0.0), abs_tol(abs_tol_) {
  if (mu < 1) throw Error(Errc::InvalidArgument, "dissipation order must be >= 1");
  if (!(std::real(beta) > 0.0))
    throw Error(Errc::InvalidArgument, "Re(beta) must be positive");
  if (!(abs_tol > 0.0)) throw Error(Errc::InvalidArgument, "abs_tol must be positive");

  const double target = std::log(100.0 / abs_tol);
  double u = std::pow(target / std::real(beta), 1.0 / (2.0 * mu));
  for (int it = 0; it < 40; ++it) {
    const double need = target + max_derivative * std::log(std::max(u, 1.0));
    const double next = std::pow(need / std::real(beta), 1.0 / (2.0 * mu));
    if (std::abs(next - u) < 1e-9 * u) {
      u = next;
      break;
    }
    u = next;
  }
  truncation = u;
}

Complex eval_H_closed_form_mu1(Complex beta, int m, double x) {
  // derivatives of exp(-x^2/(4 beta)) / sqrt(4 pi beta) via the Hermite
  // three-term recurrence, valid for complex beta with positive real part
  const Complex sq = std::sqrt(beta);  // principal branch, Re > 0
  const Complex t = x / (2.0 * sq);
  Complex h0 = 1.0, h1 = 2.0 * t;
  Complex hm = (m == 0) ? h0 : h1;
  for (int k = 1; k < m; ++k) {
    const Complex h2 = 2.0 * t * h1 - 2.0 * static_cast<double>(k) * h0;
    h0 = h1;
    h1 = h2;
    hm = h2;
  }
  const Complex norm = 1.0 / std::sqrt(4.0 * kPi * beta);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return norm * sign * std::pow(2.0 * sq, -m) * hm * std::exp(-t * t);
}

Complex eval_H_quadrature(const GeneralizedGaussianSpec& spec, int m, double x) {
  // evaluate at |x| and restore parity, so evenness is exact
  const double ax = std::abs(x);
  const Integrand f{m, 2 * spec.mu, std::real(spec.beta), std::imag(spec.beta), ax};
  const double U = spec.truncation;

  const int oscillation_panels = static_cast<int>(std::ceil(ax * U / kPi));
  const int n0 = std::clamp(std::max(8, oscillation_panels), 8, 1 << 16);
  const double width = 2.0 * U / n0;
  Complex total = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double a = -U + i * width;
    const double b = (i == n0 - 1) ? U : a + width;
    total += adapt_panel(f, a, b, gl_panel(f, a, b), 0.5 * spec.abs_tol * (b - a) / (2.0 * U), 0);
  }
  total /= 2.0 * kPi;
  if (x < 0.0 && (m % 2 == 1)) total = -total;
  return total;
}

Complex eval_H(const GeneralizedGaussianSpec& spec, int m, double x) {
  if (m < 0) throw Error(Errc::InvalidArgument, "negative derivative order");
  if (spec.mu == 1) {
    const Complex v = eval_H_closed_form_mu1(spec.beta, m, std::abs(x));
    return (x < 0.0 && m % 2 == 1) ? -v : v;
  }
  return eval_H_quadrature(spec, m, x);
}

std::vector<Complex> eval_H_grid(const GeneralizedGaussianSpec& spec, int m,
                                 std::span<const double> xs, bool parallel) {
  std::vector<Complex> out(xs.size());
  kernels::parallel_for(
      static_cast<int>(xs.size()),
      [&](int i) { out[static_cast<size_t>(i)] = eval_H(spec, m, xs[static_cast<size_t>(i)]); },
      parallel);
  return out;
}

double recurrence_residual(const GeneralizedGaussianSpec& spec, int m, double x) {
  const Complex high = eval_H(spec, m + 2 * spec.mu - 1, x);
  const double sign = (spec.mu % 2 == 0) ? 1.0 : -1.0;
  const Complex lead = sign * 2.0 * static_cast<double>(spec.mu) * spec.beta * high;
  Complex defect = x * eval_H(spec, m, x) - lead;
  if (m >= 1) defect += static_cast<double>(m) * eval_H(spec, m - 1, x);
  return std::abs(defect);
}

double envelope_decay_rate(int mu, Complex beta) {
  const double two_mu = 2.0 * mu;
  return std::pow(std::real(beta), 1.0 / two_mu) * (two_mu - 1.0) /
         std::pow(two_mu, two_mu / (two_mu - 1.0)) / 2.0;
}

EnvelopeFit decay_envelope_check(const GeneralizedGaussianSpec& spec, int m,
                                 std::span<const double> x_grid) {
  double lo = 0.0, hi = 0.0;
  for (double x : x_grid) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (lo > -10.0 || hi < 10.0)
    throw Error(Errc::InvalidArgument, "envelope grid must span at least [-10, 10]");
  EnvelopeFit fit;
  fit.c = envelope_decay_rate(spec.mu, spec.beta);
  const double expo = 2.0 * spec.mu / (2.0 * spec.mu - 1.0);
  double cmax = 0.0;
  for (double x : x_grid) {
    const double v = std::abs(eval_H(spec, m, x));
    cmax = std::max(cmax, v * std::exp(fit.c * std::pow(std::abs(x), expo)));
  }
  fit.C = cmax;
  fit.ok = std::isfinite(cmax) && cmax > 0.0;
  return fit;
}

}  // namespace convlimit
