#pragma once

#include <vector>

#include "convlimit/symbol.hpp"

namespace convlimit {

/// Derivatives of the inverse phase at the tangency value, derivatives[i]
/// holding order i+1. The zeroth-order value is i*theta_tilde.
struct VarpiJet {
  TangencyPoint point;
  std::vector<Complex> derivatives;

  int order() const noexcept { return static_cast<int>(derivatives.size()); }

  /// Derivative of order n >= 1.
  Complex deriv(int n) const {
    if (n < 1 || n > order())
      throw Error(Errc::IndexOutOfRange, "jet holds orders 1.." + std::to_string(order()));
    return derivatives[static_cast<size_t>(n - 1)];
  }
};

/// Recursive computation of the inverse-phase derivatives from the moments,
/// one Bell-polynomial contraction per order.
VarpiJet varpi_jet(const ComplexSequence& a, const TangencyPoint& point, int order);

/// Default jet length consumed by an expansion of depth s at this point.
inline int default_jet_order(int mu, int s) { return 2 * mu + s + 2; }

}  // namespace convlimit
