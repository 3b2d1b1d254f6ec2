#pragma once

#include <map>
#include <optional>
#include <vector>

#include "convlimit/expansion.hpp"
#include "convlimit/gaussian.hpp"
#include "convlimit/symbol.hpp"

namespace convlimit {

/// Scaled position seen from one tangency point.
struct ScaledCoordinates {
  double X = 0.0;                 // (n alpha - j) / n^{1/(2 mu)}
  std::optional<double> Y;        // (n alpha - j) / (j/alpha)^{1/(2 mu)}, when j/alpha > 0
};

ScaledCoordinates scaled_coordinates(const TangencyPoint& point, int n, int j);

/// Leading asymptotic profile at one tangency point.
Complex attractor(const TangencyPoint& point, int n, int j);

/// Expansion polynomials attached to one tangency point, depth s.
struct PointExpansion {
  std::vector<BivariatePolynomial> polys;  // index sigma - 1
  int s = 0;
};

/// Builds per-point expansions of the given depths (one entry per point, or a
/// single depth applied to all). jet_order 0 means the default
/// 2*mu + s + 2 per point; larger values are honored as given.
std::vector<PointExpansion> build_point_expansions(const ComplexSequence& a,
                                                   const SymbolProfile& profile,
                                                   std::vector<int> s_per_point,
                                                   bool reduced = false, int jet_order = 0);

/// Value of the full multi-point expansion at (n, j).
Complex expansion_value(const SymbolProfile& profile,
                        const std::vector<PointExpansion>& expansions, int n, int j);

struct ReportRow {
  int n = 0, j = 0;
  Complex green, expansion;
  double err_abs = 0.0;
  std::vector<double> X;  // one per tangency point
  double scaled_err = 0.0;
};

struct VerificationReport {
  std::vector<ReportRow> rows;
  std::map<int, double> scaled_sup;  // n -> n^exponent * max_j err
  double scale_exponent = 0.0;       // min_k (s_k + 1) / (2 mu_k)
  std::vector<int> s_per_point;
};

struct ErrorTableOptions {
  bool widened_window = false;  // double the support window on both sides
  bool parallel = true;
  // Rows whose certified profile envelope falls below this evaluate the
  // expansion to zero instead of integrating noise.
  double negligible = 1e-18;
};

/// Per-(n, j) comparison of the convolution powers against the expansion over
/// the exact support window.
VerificationReport error_table(const ComplexSequence& a, const SymbolProfile& profile,
                               const std::vector<PointExpansion>& expansions,
                               std::span<const int> n_list, ErrorTableOptions opts = {});

/// Smallest C making the generalized Gaussian remainder bound hold across the
/// report at the fixed rate c; ok requires stability between the lower and
/// upper halves of the n-range.
struct RemainderEnvelope {
  double C = 0.0;
  double c = 0.0;                  // rate of the first point
  std::vector<double> c_per_point;
  double C_lower = 0.0;
  double C_upper = 0.0;
  bool ok = false;
};

/// exponent_scale tightens (>1) or loosens (<1) the claimed remainder rate;
/// the default checks the rate the expansion depth implies.
RemainderEnvelope envelope_check(const VerificationReport& report, const SymbolProfile& profile,
                                 double c0_scale = 0.25, double exponent_scale = 1.0);

/// sqrt(n) times the sup CDF deviation from the matching Gaussian, per n.
/// Requires a real nonnegative sequence with unit sum.
std::map<int, double> berry_esseen_check(const ComplexSequence& a, std::span<const int> n_list);

}  // namespace convlimit
