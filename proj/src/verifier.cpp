#include "convlimit/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace convlimit {

namespace {

double root_scale(int mu, int n) { return std::pow(static_cast<double>(n), 1.0 / (2.0 * mu)); }

}  // namespace

ScaledCoordinates scaled_coordinates(const TangencyPoint& point, int n, int j) {
  ScaledCoordinates sc;
  const double num = n * point.alpha - j;
  sc.X = num / root_scale(point.mu, n);
  const double ja = j / point.alpha;
  if (ja > 0.0) sc.Y = num / std::pow(ja, 1.0 / (2.0 * point.mu));
  return sc;
}

Complex attractor(const TangencyPoint& point, int n, int j) {
  if (n < 1) throw Error(Errc::InvalidArgument, "power must be >= 1");
  const double scale = root_scale(point.mu, n);
  const GeneralizedGaussianSpec spec(point.mu, point.beta);
  const Complex h = eval_H(spec, 0, (j - n * point.alpha) / scale);
  return std::pow(point.z, n) * std::pow(point.kappa, j) / scale * h;
}

std::vector<PointExpansion> build_point_expansions(const ComplexSequence& a,
                                                   const SymbolProfile& profile,
                                                   std::vector<int> s_per_point, bool reduced,
                                                   int jet_order) {
  const size_t K = profile.points.size();
  if (K == 0) throw Error(Errc::MissingPolynomials, "profile has no tangency points");
  if (s_per_point.size() == 1) s_per_point.assign(K, s_per_point[0]);
  if (s_per_point.size() != K)
    throw Error(Errc::InvalidArgument, "need one expansion depth per tangency point");

  std::vector<PointExpansion> out;
  out.reserve(K);
  for (size_t k = 0; k < K; ++k) {
    const TangencyPoint& pt = profile.points[k];
    const int s = s_per_point[k];
    if (s < 0) throw Error(Errc::InvalidArgument, "negative expansion depth");
    PointExpansion pe;
    pe.s = s;
    if (s > 0) {
      if (std::abs(pt.alpha) < 1e-12)
        throw Error(Errc::ZeroDrift, "tangency point has zero drift; shift the sequence first");
      const int order = std::max(jet_order, default_jet_order(pt.mu, s));
      const VarpiJet jet = varpi_jet(a, pt, order);
      pe.polys = assemble_expansion(jet, s);
      if (reduced)
        for (BivariatePolynomial& p : pe.polys) p = reduce_via_recurrence(p, pt.mu, pt.beta);
    }
    out.push_back(std::move(pe));
  }
  return out;
}

namespace {

// Evaluation state for one tangency point: quadrature spec, the distinct
// derivative orders the polynomials touch, and a cutoff beyond which every
// needed derivative is numerically negligible.
struct PointEval {
  GeneralizedGaussianSpec spec;
  std::vector<int> orders;
  double x_cut = std::numeric_limits<double>::infinity();

  PointEval(const TangencyPoint& pt, const PointExpansion& pe, double negligible)
      : spec(pt.mu, pt.beta, 1e-12, top_derivative(pe) + 2 * pt.mu) {
    for (const BivariatePolynomial& p : pe.polys)
      for (const auto& [key, c] : p.terms) orders.push_back(key.second);
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    if (negligible > 0.0 && !orders.empty()) {
      // Cut where the fitted decay envelope (conservative rate, two extra
      // decades on the constant) drops below `negligible`.
      std::vector<double> grid;
      for (double x = -10.0; x <= 10.01; x += 0.5) grid.push_back(x);
      double c_fit = 0.0;
      const double rate = envelope_decay_rate(pt.mu, pt.beta);
      for (int m : orders)
        c_fit = std::max(c_fit, decay_envelope_check(spec, m, grid).C);
      const double ln_ratio = std::log(100.0 * std::max(c_fit, 1.0) / negligible);
      x_cut = std::max(10.0, std::pow(ln_ratio / rate, (2.0 * pt.mu - 1.0) / (2.0 * pt.mu)));
    }
  }

  static int top_derivative(const PointExpansion& pe) {
    int m = 0;
    for (const BivariatePolynomial& p : pe.polys) m = std::max(m, p.max_y_degree());
    return m;
  }

  std::vector<Complex> derivatives_at(double ax) const {
    std::vector<Complex> vals(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) vals[i] = eval_H(spec, orders[i], ax);
    return vals;
  }
};

Complex point_term(const TangencyPoint& pt, const PointExpansion& pe, const PointEval& pev,
                   int n, double X, std::span<const Complex> h_at_absX) {
  // h_at_absX holds the derivatives at |X| in pev.orders order
  Complex total = 0.0;
  const double n_root = root_scale(pt.mu, n);
  double sigma_scale = 1.0;
  for (int sigma = 1; sigma <= pe.s; ++sigma) {
    sigma_scale /= n_root;
    const BivariatePolynomial& poly = pe.polys[static_cast<size_t>(sigma - 1)];
    Complex acc = 0.0;
    for (const auto& [key, c] : poly.terms) {
      const auto [dx, dy] = key;
      const size_t oi = static_cast<size_t>(
          std::lower_bound(pev.orders.begin(), pev.orders.end(), dy) - pev.orders.begin());
      Complex h = h_at_absX[oi];
      if (X < 0.0 && dy % 2 == 1) h = -h;
      acc += c * std::pow(X, dx) * h;
    }
    total += sigma_scale * acc;
  }
  return total;
}

}  // namespace

Complex expansion_value(const SymbolProfile& profile,
                        const std::vector<PointExpansion>& expansions, int n, int j) {
  if (expansions.size() != profile.points.size())
    throw Error(Errc::MissingPolynomials, "expansion list does not match the profile");
  if (n < 1) throw Error(Errc::InvalidArgument, "power must be >= 1");
  Complex total = 0.0;
  for (size_t k = 0; k < profile.points.size(); ++k) {
    const TangencyPoint& pt = profile.points[k];
    const PointExpansion& pe = expansions[k];
    if (pe.s == 0) continue;
    if (static_cast<int>(pe.polys.size()) < pe.s)
      throw Error(Errc::MissingPolynomials, "missing polynomial for requested depth");
    const PointEval pev(pt, pe, 0.0);  // no cutoff on the scalar path
    const double X = (n * pt.alpha - j) / root_scale(pt.mu, n);
    const auto h = pev.derivatives_at(std::abs(X));
    total += std::pow(pt.z, n) * std::pow(pt.kappa, j) * point_term(pt, pe, pev, n, X, h);
  }
  return total;
}

VerificationReport error_table(const ComplexSequence& a, const SymbolProfile& profile,
                               const std::vector<PointExpansion>& expansions,
                               std::span<const int> n_list, ErrorTableOptions opts) {
  if (expansions.size() != profile.points.size())
    throw Error(Errc::MissingPolynomials, "expansion list does not match the profile");
  const size_t K = profile.points.size();
  const StencilBounds st = a.stencil();

  VerificationReport report;
  report.scale_exponent = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < K; ++k) {
    report.s_per_point.push_back(expansions[k].s);
    report.scale_exponent = std::min(
        report.scale_exponent,
        (expansions[k].s + 1.0) / (2.0 * profile.points[k].mu));
  }

  std::vector<PointEval> pev;
  pev.reserve(K);
  for (size_t k = 0; k < K; ++k)
    pev.emplace_back(profile.points[k], expansions[k], opts.negligible);

  std::vector<int> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (!ns.empty() && ns.front() < 1) throw Error(Errc::InvalidArgument, "powers must be >= 1");

  GreenIterator green(a);
  for (int n : ns) {
    const ComplexSequence& g = green.advance_to(n);
    const int widen = opts.widened_window ? 2 : 1;
    const int j_lo = -widen * n * st.p;
    const int j_hi = widen * n * st.r;

    // distinct |X| values per point, below the negligibility cutoff
    std::vector<std::vector<double>> keys(K);
    std::vector<std::vector<std::vector<Complex>>> hvals(K);
    for (size_t k = 0; k < K; ++k) {
      if (expansions[k].s == 0) continue;
      const TangencyPoint& pt = profile.points[k];
      const double scale = root_scale(pt.mu, n);
      std::vector<double>& kk = keys[k];
      kk.reserve(static_cast<size_t>(j_hi - j_lo + 1));
      for (int j = j_lo; j <= j_hi; ++j) {
        const double ax = std::abs((n * pt.alpha - j) / scale);
        if (ax <= pev[k].x_cut) kk.push_back(ax);
      }
      std::sort(kk.begin(), kk.end());
      kk.erase(std::unique(kk.begin(), kk.end()), kk.end());
      hvals[k].resize(kk.size());
      kernels::parallel_for(
          static_cast<int>(kk.size()),
          [&](int i) {
            hvals[k][static_cast<size_t>(i)] = pev[k].derivatives_at(kk[static_cast<size_t>(i)]);
          },
          opts.parallel);
    }

    std::vector<Complex> zn(K);
    for (size_t k = 0; k < K; ++k) zn[k] = std::pow(profile.points[k].z, n);

    const double nscale = std::pow(static_cast<double>(n), report.scale_exponent);
    double max_err = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) {
      ReportRow row;
      row.n = n;
      row.j = j;
      row.green = g[j];
      Complex total = 0.0;
      for (size_t k = 0; k < K; ++k) {
        const TangencyPoint& pt = profile.points[k];
        const double X = (n * pt.alpha - j) / root_scale(pt.mu, n);
        row.X.push_back(X);
        if (expansions[k].s == 0) continue;
        const double ax = std::abs(X);
        if (ax > pev[k].x_cut) continue;  // every needed derivative is below `negligible`
        const auto it = std::lower_bound(keys[k].begin(), keys[k].end(), ax);
        const auto& h = hvals[k][static_cast<size_t>(it - keys[k].begin())];
        total += zn[k] * std::pow(pt.kappa, j) *
                 point_term(pt, expansions[k], pev[k], n, X, h);
      }
      row.expansion = total;
      row.err_abs = std::abs(row.green - row.expansion);
      row.scaled_err = nscale * row.err_abs;
      max_err = std::max(max_err, row.err_abs);
      report.rows.push_back(std::move(row));
    }
    report.scaled_sup[n] = nscale * max_err;
  }
  return report;
}

RemainderEnvelope envelope_check(const VerificationReport& report, const SymbolProfile& profile,
                                 double c0_scale, double exponent_scale) {
  RemainderEnvelope env;
  const size_t K = profile.points.size();
  if (report.rows.empty() || report.s_per_point.size() != K) return env;

  std::vector<double> rate(K), expo(K), decay_pow(K);
  for (size_t k = 0; k < K; ++k) {
    const TangencyPoint& pt = profile.points[k];
    rate[k] = c0_scale * envelope_decay_rate(pt.mu, pt.beta);
    expo[k] = exponent_scale * (report.s_per_point[k] + 1.0) / (2.0 * pt.mu);
    decay_pow[k] = 2.0 * pt.mu / (2.0 * pt.mu - 1.0);
  }
  env.c = rate.empty() ? 0.0 : rate[0];
  env.c_per_point = rate;

  int n_lo = report.rows.front().n, n_hi = n_lo;
  for (const ReportRow& r : report.rows) {
    n_lo = std::min(n_lo, r.n);
    n_hi = std::max(n_hi, r.n);
  }
  const double n_mid = 0.5 * (n_lo + n_hi);

  double c_all = 0.0, c_low = 0.0, c_up = 0.0;
  for (const ReportRow& r : report.rows) {
    double bound = 0.0;
    for (size_t k = 0; k < K; ++k)
      bound += std::pow(static_cast<double>(r.n), -expo[k]) *
               std::exp(-rate[k] * std::pow(std::abs(r.X[k]), decay_pow[k]));
    const double ratio = (bound > 0.0) ? r.err_abs / bound
                                       : (r.err_abs > 0.0
                                              ? std::numeric_limits<double>::infinity()
                                              : 0.0);
    c_all = std::max(c_all, ratio);
    double& half = (r.n <= n_mid) ? c_low : c_up;
    half = std::max(half, ratio);
  }
  env.C = c_all;
  env.C_lower = c_low;
  env.C_upper = c_up;
  env.ok = std::isfinite(c_all) && c_low > 0.0 && c_up <= 2.0 * c_low;
  return env;
}

std::map<int, double> berry_esseen_check(const ComplexSequence& a,
                                         std::span<const int> n_list) {
  double mass = 0.0;
  for (const Complex& c : a.coefficients()) {
    if (std::abs(c.imag()) > 1e-12 || c.real() < -1e-12)
      throw Error(Errc::NotProbabilistic, "coefficients must be real and nonnegative");
    mass += c.real();
  }
  if (std::abs(mass - 1.0) > 1e-12)
    throw Error(Errc::NotProbabilistic, "coefficients must sum to one");

  const double alpha = -std::real(moment(a, 1, 1.0));
  const double variance = std::real(moment(a, 2, 1.0)) - alpha * alpha;
  if (!(variance > 0.0)) throw Error(Errc::NotProbabilistic, "variance must be positive");

  const StencilBounds st = a.stencil();
  std::vector<int> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (!ns.empty() && ns.front() < 1) throw Error(Errc::InvalidArgument, "powers must be >= 1");

  std::map<int, double> out;
  GreenIterator green(a);
  for (int n : ns) {
    const ComplexSequence& g = green.advance_to(n);
    const double sd = std::sqrt(variance * n);
    const int margin = static_cast<int>(std::ceil(8.0 * sd)) + 2;
    const int lo = -n * st.p - margin;
    const int hi = n * st.r + margin;
    kernels::CompensatedSum disc, gauss;
    double sup = 0.0;
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * variance * n);
    for (int J = lo; J <= hi; ++J) {
      disc.add(std::real(g[J]));
      const double d = J - n * alpha;
      gauss.add(norm * std::exp(-d * d / (2.0 * variance * n)));
      sup = std::max(sup, std::abs(disc.value() - gauss.value()));
    }
    out[n] = std::sqrt(static_cast<double>(n)) * sup;
  }
  return out;
}

}  // namespace convlimit
