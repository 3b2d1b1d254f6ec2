#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "convlimit/io.hpp"
#include "convlimit/presets.hpp"
#include "convlimit/spatial.hpp"
#include "convlimit/verifier.hpp"

namespace fs = std::filesystem;
using namespace convlimit;

namespace {

struct CommonOpts {
  std::string input;
  std::string preset;
  double lambda_a = 0.5;
  std::vector<int> s_list{2};
  int n_min = 10, n_max = 100, n_step = 10;
  double tol = 1e-9;
  bool oracle = false;
  int jobs = 0;
  std::string out = ".";
  bool normalize = false;
  bool reduced = false;
  bool wide_window = false;
};

void add_sequence_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--input", o.input, "sequence JSON file");
  cmd->add_option("--preset", o.preset, "named preset: probabilistic-example | o3");
  cmd->add_option("--lambda-a", o.lambda_a, "Courant number for the o3 preset");
  cmd->add_option("--tol", o.tol, "tangency tolerance");
  cmd->add_option("--jobs", o.jobs, "worker cap (0 = hardware)");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_flag("--normalize", o.normalize, "rescale so that max |F| = 1 before analysis");
}

void add_range_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--n-min", o.n_min, "first power");
  cmd->add_option("--n-max", o.n_max, "last power");
  cmd->add_option("--n-step", o.n_step, "power step");
}

ComplexSequence load_sequence(const CommonOpts& o) {
  if (!o.input.empty() && !o.preset.empty())
    throw Error(Errc::InvalidArgument, "give either --input or --preset, not both");
  ComplexSequence a = [&] {
    if (o.preset == "probabilistic-example") return probabilistic_example();
    if (o.preset == "o3") return o3_scheme(o.lambda_a);
    if (!o.preset.empty())
      throw Error(Errc::InvalidArgument, "unknown preset '" + o.preset + "'");
    if (o.input.empty())
      throw Error(Errc::InvalidArgument, "a sequence is required (--input or --preset)");
    return read_sequence_file(o.input);
  }();
  if (o.normalize) {
    double peak = 0.0;
    for (int i = 0; i < 8192; ++i) {
      const double t = 2.0 * 3.14159265358979323846 * i / 8192;
      peak = std::max(peak, std::abs(eval_symbol(a, Complex(std::cos(t), std::sin(t)))));
    }
    if (peak > 0.0 && peak != 1.0) a = a.scaled(1.0 / peak);
  }
  return a;
}

std::vector<int> power_range(const CommonOpts& o) {
  if (o.n_min < 1 || o.n_step < 1 || o.n_max < o.n_min)
    throw Error(Errc::InvalidArgument, "bad power range");
  std::vector<int> ns;
  for (int n = o.n_min; n <= o.n_max; n += o.n_step) ns.push_back(n);
  return ns;
}

std::ofstream open_out(const CommonOpts& o, const std::string& name) {
  fs::create_directories(o.out);
  const fs::path p = fs::path(o.out) / name;
  std::ofstream f(p);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + p.string());
  std::cout << "wrote " << p.string() << "\n";
  return f;
}

SymbolOptions symbol_options(const CommonOpts& o) {
  SymbolOptions so;
  so.tol = o.tol;
  return so;
}

int cmd_analyze(const CommonOpts& o) {
  const ComplexSequence a = load_sequence(o);
  const SymbolProfile profile = check_hypotheses(a, symbol_options(o));
  auto f = open_out(o, "profile.json");
  write_profile_json(f, profile);
  const HypothesisReport& r = profile.report;
  std::cout << "H1=" << (r.h1 ? "ok" : "FAIL") << " H2=" << (r.h2 ? "ok" : "FAIL")
            << " H2-bis=" << (r.h2_bis ? "ok" : "FAIL") << " H3=" << (r.h3 ? "ok" : "FAIL")
            << "\n";
  for (const std::string& note : r.notes) std::cout << "note: " << note << "\n";
  if (r.suggested_shift) std::cout << "suggested shift J=" << *r.suggested_shift << "\n";
  for (size_t k = 0; k < profile.points.size(); ++k) {
    const TangencyPoint& pt = profile.points[k];
    std::cout << "point " << k << ": kappa=(" << format_double(pt.kappa.real()) << ","
              << format_double(pt.kappa.imag()) << ") alpha=" << format_double(pt.alpha)
              << " mu=" << pt.mu << " beta=(" << format_double(pt.beta.real()) << ","
              << format_double(pt.beta.imag()) << ") case=" << case_tag_name(pt.case_tag)
              << "\n";
  }
  return r.admissible() ? 0 : 2;
}

int cmd_green(const CommonOpts& o) {
  const ComplexSequence a = load_sequence(o);
  const std::vector<int> ns = power_range(o);
  std::vector<std::pair<int, ComplexSequence>> rows;
  GreenIterator green(a);
  for (int n : ns) rows.emplace_back(n, green.advance_to(n));
  auto f = open_out(o, "green.csv");
  write_green_csv(f, rows);
  return 0;
}

int cmd_expand(const CommonOpts& o) {
  const ComplexSequence a = load_sequence(o);
  const SymbolProfile profile = check_hypotheses(a, symbol_options(o));
  if (!profile.report.admissible()) {
    std::cerr << "hypotheses not satisfied; run analyze for diagnostics\n";
    if (profile.report.suggested_shift)
      std::cerr << "suggested shift J=" << *profile.report.suggested_shift << "\n";
    return 2;
  }
  try {
    const auto canonical = build_point_expansions(a, profile, o.s_list, /*reduced=*/false);
    const auto reduced = build_point_expansions(a, profile, o.s_list, /*reduced=*/true);
    for (size_t k = 0; k < canonical.size(); ++k) {
      for (int sigma = 1; sigma <= canonical[k].s; ++sigma) {
        auto f = open_out(o, "expansion_point" + std::to_string(k) + "_sigma" +
                                 std::to_string(sigma) + ".json");
        write_polynomial_json(f, sigma, canonical[k].polys[static_cast<size_t>(sigma - 1)]);
        auto g = open_out(o, "expansion_point" + std::to_string(k) + "_sigma" +
                                 std::to_string(sigma) + "_reduced.json");
        write_polynomial_json(g, sigma, reduced[k].polys[static_cast<size_t>(sigma - 1)]);
      }
      if (canonical[k].s == 0)
        std::cout << "point " << k << ": depth 0, attractor-only mode (no polynomials)\n";
    }
  } catch (const Error& e) {
    if (e.code() == Errc::ZeroDrift) {
      std::cerr << e.what() << "\n";
      if (profile.report.suggested_shift)
        std::cerr << "suggested shift J=" << *profile.report.suggested_shift << "\n";
      return 2;
    }
    throw;
  }
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  const ComplexSequence a = load_sequence(o);
  const SymbolProfile profile = check_hypotheses(a, symbol_options(o));
  if (!profile.report.admissible()) {
    std::cerr << "hypotheses not satisfied; run analyze for diagnostics\n";
    return 2;
  }
  const std::vector<int> ns = power_range(o);
  const auto expansions = build_point_expansions(a, profile, o.s_list, o.reduced);

  ErrorTableOptions topts;
  topts.widened_window = o.wide_window;
  const VerificationReport report = error_table(a, profile, expansions, ns, topts);
  const RemainderEnvelope envelope = envelope_check(report, profile);

  std::optional<std::map<int, double>> berry;
  try {
    berry = berry_esseen_check(a, ns);
  } catch (const Error& e) {
    if (e.code() != Errc::NotProbabilistic) throw;
  }

  {
    auto f = open_out(o, "report.csv");
    write_report_csv(f, report);
  }
  {
    auto f = open_out(o, "summary.json");
    write_summary_json(f, report, envelope, berry ? &*berry : nullptr);
  }

  if (o.oracle) {
    const StencilBounds st = a.stencil();
    const int n_oracle = std::min(o.n_max, 20);
    const auto table = contour_reconstruct_table(a, n_oracle, 1.2, 512, -n_oracle * st.p,
                                                 n_oracle * st.r);
    GreenIterator green(a);
    double worst = 0.0;
    for (int n = 0; n <= n_oracle; ++n) {
      const ComplexSequence& g = green.advance_to(n);
      for (int j = -n_oracle * st.p; j <= n_oracle * st.r; ++j)
        worst = std::max(
            worst, std::abs(table[static_cast<size_t>(n)]
                                 [static_cast<size_t>(j + n_oracle * st.p)] -
                            g[j]));
    }
    std::cout << "oracle: contour reconstruction max deviation " << format_double(worst)
              << " for n <= " << n_oracle << "\n";
  }

  std::cout << "envelope: C=" << format_double(envelope.C) << " c=" << format_double(envelope.c)
            << " ok=" << (envelope.ok ? "yes" : "NO") << "\n";
  return envelope.ok ? 0 : 3;
}

int cmd_plot_data(const std::string& function, int mu, const std::string& beta_text, int m,
                  double xmin, double xmax, double step) {
  if (function != "H") throw Error(Errc::InvalidArgument, "only --function H is available");
  if (step <= 0.0 || xmax < xmin) throw Error(Errc::InvalidArgument, "bad x range");
  Complex beta;
  const size_t comma = beta_text.find(',');
  if (comma == std::string::npos) {
    beta = parse_rational(beta_text);
  } else {
    beta = Complex(parse_rational(beta_text.substr(0, comma)),
                   parse_rational(beta_text.substr(comma + 1)));
  }
  const GeneralizedGaussianSpec spec(mu, beta, 1e-12, m);
  std::cout << "x,re,im\n";
  for (double x = xmin; x <= xmax + 0.5 * step; x += step) {
    const Complex v = eval_H(spec, m, x);
    std::cout << format_double(x) << ',' << format_double(v.real()) << ','
              << format_double(v.imag()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convolution-power asymptotics toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  if (const char* env = std::getenv("CONVLIMIT_TOL")) {
    try {
      opts.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring unparsable CONVLIMIT_TOL\n";
    }
  }

  CLI::App* analyze = app.add_subcommand("analyze", "hypothesis checks and tangency data");
  add_sequence_flags(analyze, opts);

  CLI::App* green = app.add_subcommand("green", "convolution powers of the Dirac mass");
  add_sequence_flags(green, opts);
  add_range_flags(green, opts);

  CLI::App* expand = app.add_subcommand("expand", "expansion polynomials per tangency point");
  add_sequence_flags(expand, opts);
  expand->add_option("--s", opts.s_list, "expansion depth per point")->delimiter(',');

  CLI::App* verify = app.add_subcommand("verify", "error table against the expansion");
  add_sequence_flags(verify, opts);
  add_range_flags(verify, opts);
  verify->add_option("--s", opts.s_list, "expansion depth per point")->delimiter(',');
  verify->add_flag("--oracle", opts.oracle, "cross-check powers by contour reconstruction");
  verify->add_flag("--reduced", opts.reduced, "use the X-free normal form");
  verify->add_flag("--wide-window", opts.wide_window, "double the verification window");

  std::string plot_function = "H", beta_text = "0.25";
  int plot_mu = 1, plot_m = 0;
  double xmin = -8.0, xmax = 8.0, xstep = 0.0625;
  CLI::App* plot = app.add_subcommand("plot-data", "profile samples as CSV on stdout");
  plot->add_option("--function", plot_function, "profile name (H)");
  plot->add_option("--mu", plot_mu, "dissipation order");
  plot->add_option("--beta", beta_text, "dissipation coefficient, re[,im]");
  plot->add_option("--m", plot_m, "derivative order");
  plot->add_option("--xmin", xmin);
  plot->add_option("--xmax", xmax);
  plot->add_option("--step", xstep);

  CLI11_PARSE(app, argc, argv);
  kernels::set_jobs(opts.jobs);

  try {
    if (analyze->parsed()) return cmd_analyze(opts);
    if (green->parsed()) return cmd_green(opts);
    if (expand->parsed()) return cmd_expand(opts);
    if (verify->parsed()) return cmd_verify(opts);
    if (plot->parsed())
      return cmd_plot_data(plot_function, plot_mu, beta_text, plot_m, xmin, xmax, xstep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
