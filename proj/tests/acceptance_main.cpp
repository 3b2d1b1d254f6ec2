// Integration acceptance suite. Each check prints one line with its verdict,
// measured detail, and wall time against the budget; the process exits
// nonzero when any check fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "convlimit/expansion.hpp"
#include "convlimit/gaussian.hpp"
#include "convlimit/presets.hpp"
#include "convlimit/spatial.hpp"
#include "convlimit/verifier.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace convlimit;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
  void note(const std::string& text) {
    if (pass) detail = text;
  }
};

int g_failures = 0;

void run(int id, const std::string& name, double budget_s,
         const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= budget_s) {
    out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!out.pass) ++g_failures;
  std::printf("[%2d] %s  %-34s (%.2fs < %.0fs)  %s\n", id, out.pass ? "PASS" : "FAIL",
              name.c_str(), dt, budget_s, out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Complex coeff(const BivariatePolynomial& p, int dx, int dy) {
  const auto it = p.terms.find({dx, dy});
  return it == p.terms.end() ? Complex{} : it->second;
}

double off_term_mass(const BivariatePolynomial& p, int dx, int dy) {
  double worst = 0.0;
  for (const auto& [key, c] : p.terms)
    if (key != std::pair{dx, dy}) worst = std::max(worst, std::abs(c));
  return worst;
}

double half_split_ratio(const std::map<int, double>& by_n, int split) {
  double lo = 0.0, hi = 0.0;
  for (const auto& [n, v] : by_n) {
    double& side = (n <= split) ? lo : hi;
    side = std::max(side, v);
  }
  return hi / lo;
}

std::vector<int> range(int lo, int hi, int step) {
  std::vector<int> ns;
  for (int n = lo; n <= hi; n += step) ns.push_back(n);
  return ns;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  run(1, "three-point walk analysis", 1.0, [](Outcome& out) {
    const SymbolProfile prof = check_hypotheses(probabilistic_example());
    out.require(prof.report.admissible(), "hypotheses not satisfied");
    out.require(prof.points.size() == 1, "expected a single tangency point");
    const TangencyPoint& pt = prof.points[0];
    const double ea = std::abs(pt.alpha - 0.5);
    const double eb = std::abs(pt.beta - Complex(7.0 / 24.0));
    out.require(ea <= 1e-12, "drift error " + fmt(ea));
    out.require(pt.mu == 1, "wrong dissipation order");
    out.require(eb <= 1e-12, "beta error " + fmt(eb));
    out.note("alpha err " + fmt(ea) + ", beta err " + fmt(eb));
  });

  run(2, "leading polynomial is one", 10.0, [](Outcome& out) {
    std::vector<ComplexSequence> cases{probabilistic_example(), o3_scheme(0.5)};
    std::mt19937_64 rng(0xC0FFEE);
    for (int t = 0; t < 20; ++t)
      cases.push_back(generators::random_admissible(rng, t % 2 == 1));
    double worst = 0.0;
    for (const ComplexSequence& a : cases) {
      const SymbolProfile prof = check_hypotheses(a);
      out.require(prof.report.admissible(), "randomized sequence failed the hypotheses");
      if (!prof.report.admissible()) return;
      const TangencyPoint& pt = prof.points[0];
      const VarpiJet jet = varpi_jet(a, pt, default_jet_order(pt.mu, 2));
      const auto polys = assemble_expansion(jet, 2);
      worst = std::max(worst, std::abs(coeff(polys[0], 0, 0) - Complex(1.0)));
      worst = std::max(worst, off_term_mass(polys[0], 0, 0));
    }
    out.require(worst <= 1e-12, "deviation " + fmt(worst));
    out.note("22 sequences, max deviation " + fmt(worst));
  });

  run(3, "quartic stencil depth-3 family", 5.0, [](Outcome& out) {
    const ComplexSequence a = o3_scheme(0.5);
    const SymbolProfile prof = check_hypotheses(a);
    const TangencyPoint& pt = prof.points[0];
    const VarpiJet jet = varpi_jet(a, pt, default_jet_order(pt.mu, 3));
    const auto polys = assemble_expansion(jet, 3);

    out.require(polys[1].is_zero(1e-10), "sigma=2 fails to vanish");

    const Complex p3 = coeff(polys[2], 0, 6);
    const double e3 = std::abs(p3 - Complex(-1.953125e-3));
    out.require(e3 <= 1e-8, "p3 error " + fmt(e3));
    out.require(off_term_mass(polys[2], 0, 6) <= 1e-10, "extra sigma=3 terms");

    // independent confirmation of the refined value from the stencil oracle
    const auto oracle_jet = oracles::inverse_phase_jet_fd(a, pt, default_jet_order(pt.mu, 3));
    const auto oracle_polys = assemble_expansion(VarpiJet{pt, oracle_jet}, 3);
    const double eo = std::abs(coeff(oracle_polys[2], 0, 6) - Complex(-1.953125e-3));
    out.require(eo <= 1e-8, "oracle p3 error " + fmt(eo));
    out.note("p3 err " + fmt(e3) + ", oracle err " + fmt(eo));
  });

  run(4, "walk normal form at depth 2", 1.0, [](Outcome& out) {
    const ComplexSequence a = probabilistic_example();
    const SymbolProfile prof = check_hypotheses(a);
    const VarpiJet jet = varpi_jet(a, prof.points[0], default_jet_order(1, 2));
    const auto polys = assemble_expansion(jet, 2);
    const BivariatePolynomial q2 = reduce_via_recurrence(polys[1], 1, prof.points[0].beta);
    const double ec = std::abs(coeff(q2, 0, 3) + Complex(1.0 / 12.0));
    out.require(ec <= 1e-12, "cubic coefficient error " + fmt(ec));
    out.require(off_term_mass(q2, 0, 3) <= 1e-12, "extra terms survive the reduction");
    out.note("coefficient err " + fmt(ec));
  });

  run(5, "walk error-table boundedness", 60.0, [](Outcome& out) {
    const ComplexSequence a = probabilistic_example();
    const SymbolProfile prof = check_hypotheses(a);
    const auto exps = build_point_expansions(a, prof, {2}, /*reduced=*/true);
    const auto ns = range(10, 500, 10);
    const auto report = error_table(a, prof, exps, ns);
    const double ratio = half_split_ratio(report.scaled_sup, 250);
    out.require(ratio <= 1.5, "growth ratio " + fmt(ratio));
    out.note("n^{3/2} sup ratio " + fmt(ratio));
  });

  run(6, "quartic error-table boundedness", 120.0, [](Outcome& out) {
    const ComplexSequence a = o3_scheme(0.5);
    const SymbolProfile prof = check_hypotheses(a);
    const auto exps = build_point_expansions(a, prof, {3});
    const auto ns = range(10, 400, 10);
    const auto report = error_table(a, prof, exps, ns);
    const double ratio = half_split_ratio(report.scaled_sup, 200);
    out.require(ratio <= 1.5, "growth ratio " + fmt(ratio));
    out.note("n sup ratio " + fmt(ratio));
  });

  run(7, "contour oracle equivalence", 30.0, [](Outcome& out) {
    double worst = 0.0;
    for (const ComplexSequence& a : {probabilistic_example(), o3_scheme(0.5)}) {
      const StencilBounds st = a.stencil();
      const int n_max = 20;
      const auto table =
          contour_reconstruct_table(a, n_max, 1.2, 512, -n_max * st.p, n_max * st.r);
      GreenIterator green(a);
      for (int n = 0; n <= n_max; ++n) {
        const ComplexSequence& g = green.advance_to(n);
        for (int j = -n_max * st.p; j <= n_max * st.r; ++j)
          worst = std::max(
              worst, std::abs(table[static_cast<size_t>(n)]
                                   [static_cast<size_t>(j + n_max * st.p)] -
                              g[j]));
      }
    }
    out.require(worst <= 1e-8, "deviation " + fmt(worst));
    out.note("max deviation " + fmt(worst));
  });

  run(8, "spectral splitting", 10.0, [](Outcome& out) {
    std::mt19937_64 rng(7777);
    std::uniform_real_distribution<double> mod(1.05, 3.0);
    std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
    for (const ComplexSequence& a : {probabilistic_example(), o3_scheme(0.5)}) {
      const StencilBounds st = a.stencil();
      for (int t = 0; t < 200; ++t) {
        const Complex z = std::polar(mod(rng), arg(rng));
        const SpectralSplit split = spectral_split(a, z);
        if (split.n_stable != st.r || split.n_unit != 0 || split.n_unstable != st.p) {
          std::ostringstream ss;
          ss << "split (" << split.n_stable << "," << split.n_unit << ","
             << split.n_unstable << ") at z=(" << z.real() << "," << z.imag() << ")";
          out.require(false, ss.str());
          return;
        }
      }
    }
    out.note("400 samples, all (r, 0, p)");
  });

  run(9, "profile evaluation suite", 30.0, [](Outcome& out) {
    const GeneralizedGaussianSpec heat(1, 7.0 / 24.0);
    double quad_err = 0.0;
    for (int m = 0; m <= 4; ++m)
      for (double x = -8.0; x <= 8.001; x += 0.25)
        quad_err = std::max(quad_err,
                            std::abs(eval_H_quadrature(heat, m, x) - eval_H(heat, m, x)));
    out.require(quad_err <= 1e-11, "closed-form deviation " + fmt(quad_err));

    double rec_err = 0.0;
    for (const GeneralizedGaussianSpec& s :
         {GeneralizedGaussianSpec(1, 7.0 / 24.0, 1e-12, 12),
          GeneralizedGaussianSpec(2, 3.0 / 128.0, 1e-12, 12)}) {
      for (int m = 0; m <= 6; ++m)
        for (double x = -10.0; x <= 10.001; x += 1.0)
          rec_err = std::max(rec_err, recurrence_residual(s, m, x));
      out.require(rec_err <= 10.0 * s.abs_tol, "recurrence residual " + fmt(rec_err));
    }

    double even_err = 0.0;
    const GeneralizedGaussianSpec quartic(2, 3.0 / 128.0, 1e-12, 12);
    for (int m = 0; m <= 8; ++m)
      for (double x = 0.5; x <= 6.0; x += 0.75) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        even_err = std::max(even_err,
                            std::abs(eval_H(quartic, m, -x) - sign * eval_H(quartic, m, x)));
      }
    out.require(even_err <= 2e-12, "evenness defect " + fmt(even_err));

    double mass_err = 0.0;
    for (const GeneralizedGaussianSpec* s : {&heat, &quartic}) {
      const Complex integral =
          oracles::trapezoid([&](double x) { return eval_H(*s, 0, x); }, 20.0, 400);
      mass_err = std::max(mass_err, std::abs(integral - Complex(1.0)));
    }
    out.require(mass_err <= 1e-8, "mass defect " + fmt(mass_err));
    out.note("quad err " + fmt(quad_err) + ", recurrence " + fmt(rec_err) + ", mass " +
             fmt(mass_err));
  });

  run(10, "cdf deviation boundedness", 60.0, [](Outcome& out) {
    const auto dev = berry_esseen_check(probabilistic_example(), range(10, 500, 10));
    const double ratio = half_split_ratio(dev, 250);
    out.require(ratio <= 1.5, "growth ratio " + fmt(ratio));
    out.note("sqrt(n) sup ratio " + fmt(ratio));
  });

  run(11, "algebraic invariant suite", 60.0, [](Outcome& out) {
    for (const ComplexSequence& a : {probabilistic_example(), o3_scheme(0.5)}) {
      // semigroup law componentwise
      for (const auto& [n, m] : {std::pair{60, 140}, {100, 100}, {1, 199}}) {
        const ComplexSequence lhs = green_function(a, n + m);
        const ComplexSequence rhs = convolve(green_function(a, n), green_function(a, m));
        for (int j = lhs.support_min(); j <= lhs.support_max(); ++j)
          if (std::abs(lhs[j] - rhs[j]) > 1e-10) {
            out.require(false, "semigroup defect at n+m=" + std::to_string(n + m));
            return;
          }
      }
      // mass conservation and support bounds
      const Complex f1 = eval_symbol(a, 1.0);
      const StencilBounds st = a.stencil();
      GreenIterator green(a);
      Complex expected = 1.0;
      for (int n = 1; n <= 200; ++n) {
        const ComplexSequence& g = green.advance_to(n);
        expected *= f1;
        kernels::ComplexCompensatedSum acc;
        for (const Complex& c : g.coefficients()) acc.add(c);
        if (std::abs(acc.value() - expected) > 1e-10 * std::abs(expected)) {
          out.require(false, "mass defect at n=" + std::to_string(n));
          return;
        }
        if (g.support_min() < -n * st.p || g.support_max() > n * st.r) {
          out.require(false, "support leak at n=" + std::to_string(n));
          return;
        }
      }
    }

    // shift and phase covariance of the full pipeline
    const ComplexSequence a = probabilistic_example();
    const SymbolProfile base_prof = check_hypotheses(a);
    const auto base_exps = build_point_expansions(a, base_prof, {2}, true);
    const auto ns = range(10, 200, 38);
    const auto base = error_table(a, base_prof, base_exps, ns);

    {
      const int J = 1;
      const ComplexSequence b = shift_sequence(a, J);
      const SymbolProfile prof = check_hypotheses(b);
      const auto exps = build_point_expansions(b, prof, {2}, true);
      const auto moved = error_table(b, prof, exps, ns);
      std::map<std::pair<int, int>, double> err;
      for (const auto& row : moved.rows) err[{row.n, row.j}] = row.err_abs;
      for (const auto& row : base.rows) {
        const auto it = err.find({row.n, row.j + row.n * J});
        if (it == err.end() || std::abs(row.err_abs - it->second) > 1e-10) {
          out.require(false, "shift covariance defect");
          return;
        }
      }
    }
    {
      const ComplexSequence b = a.scaled(std::polar(1.0, 1.1));
      const SymbolProfile prof = check_hypotheses(b);
      const auto exps = build_point_expansions(b, prof, {2}, true);
      const auto rot = error_table(b, prof, exps, ns);
      for (size_t i = 0; i < base.rows.size(); ++i)
        if (std::abs(base.rows[i].err_abs - rot.rows[i].err_abs) > 1e-10) {
          out.require(false, "phase covariance defect");
          return;
        }
    }
    out.note("semigroup, mass, support, shift, phase all within tolerance");
  });

  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL PASS" : "FAILED", g_failures,
              g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
