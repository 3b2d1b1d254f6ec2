#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "convlimit/sequence.hpp"

namespace convlimit {

enum class CaseTag { I, II, III, Undrifted };

inline const char* case_tag_name(CaseTag t) {
  switch (t) {
    case CaseTag::I: return "I";
    case CaseTag::II: return "II";
    case CaseTag::III: return "III";
    case CaseTag::Undrifted: return "undrifted";
  }
  return "?";
}

/// One point where the symbol touches the unit circle, together with the
/// local log-expansion data (drift, dissipation order and coefficient).
struct TangencyPoint {
  Complex kappa;        // on S^1
  Complex z;            // F(kappa), on S^1
  Complex tau;          // i*theta with z = exp(i*theta), theta in (-pi, pi]
  double theta_tilde;   // kappa = exp(i*theta_tilde), in (-pi, pi]
  double alpha = 0.0;   // drift
  int mu = 0;           // dissipation order (exponent 2*mu)
  Complex beta;         // Re(beta) > 0
  CaseTag case_tag = CaseTag::Undrifted;
  double alpha_im_residue = 0.0;  // |Im| discarded when realifying the drift
};

struct HypothesisReport {
  bool h1 = false;
  bool h2 = false;
  bool h2_bis = false;
  bool h3 = false;
  std::optional<int> suggested_shift;  // set when only H2-bis holds
  std::vector<std::string> notes;

  bool admissible() const { return h1 && (h2 || h2_bis) && h3; }
};

struct SymbolProfile {
  ComplexSequence sequence;
  std::vector<TangencyPoint> points;
  HypothesisReport report;
};

/// F(kappa) = sum_j a_j kappa^j, Horner over negative and positive powers.
Complex eval_symbol(const ComplexSequence& a, Complex kappa);

/// M_n(kappa) = sum_j j^n a_j kappa^j; M_0 = F.
Complex moment(const ComplexSequence& a, int n, Complex kappa);

struct SymbolOptions {
  int grid_size = 8192;
  double tol = 1e-9;        // tangency certificate |,|F|-1,| <= tol
  double drift_tol = 1e-9;  // |alpha| below this counts as zero drift
  int max_order = 12;       // log-jet length used to detect (mu, beta)
  // When set, these candidates replace the grid scan entirely (they are
  // still refined and certified). Escape hatch for symbols whose tangency
  // points sit closer together than the grid can resolve.
  std::vector<Complex> override_points;
};

/// Points kappa on S^1 with |F(kappa)| = 1, located by a grid scan of
/// |F(e^{it})|^2 followed by Newton refinement of the stationarity equation.
/// Also certifies max |F| <= 1 + tol over the grid.
std::vector<Complex> locate_tangency_points(const ComplexSequence& a,
                                            const SymbolOptions& opts = {});

/// Taylor coefficients of xi -> log(F(kappa e^{i xi}) / z) at 0, computed from
/// the moments through the Bell-polynomial composition with the logarithm.
/// index m in [0, max_order]; entry 0 is zero by construction.
std::vector<Complex> log_symbol_jet(const ComplexSequence& a, Complex kappa, int max_order);

/// Extracts (alpha, mu, beta) at a tangency candidate. The candidate is first
/// polished so that the odd coefficient below the dissipation order vanishes,
/// which restores full accuracy at flat (mu >= 2) tangencies.
TangencyPoint expand_at_tangency(const ComplexSequence& a, Complex kappa,
                                 const SymbolOptions& opts = {});

/// Full hypothesis verdicts plus per-point case tags.
SymbolProfile check_hypotheses(const ComplexSequence& a, const SymbolOptions& opts = {});

/// True iff |a_{-r}| < 1 and |a_p| < 1.
bool boundary_coefficient_check(const ComplexSequence& a);

}  // namespace convlimit
