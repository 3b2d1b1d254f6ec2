#include "convlimit/varpi.hpp"

#include <cmath>

#include "convlimit/bell.hpp"

namespace convlimit {

VarpiJet varpi_jet(const ComplexSequence& a, const TangencyPoint& point, int order) {
  if (order < 1) throw Error(Errc::InvalidArgument, "jet order must be positive");
  const Complex kappa = point.kappa;
  const Complex z = point.z;

  std::vector<Complex> m(static_cast<size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) m[static_cast<size_t>(n)] = moment(a, n, kappa);
  if (std::abs(m[1]) < 1e-12)
    throw Error(Errc::ZeroFirstMoment,
                "first moment vanishes at the tangency point; shift the sequence first");

  VarpiJet jet{point, {}};
  jet.derivatives.reserve(static_cast<size_t>(order));
  jet.derivatives.push_back(z / m[1]);
  for (int n = 2; n <= order; ++n) {
    Complex acc = z;
    for (int j = 2; j <= n; ++j)
      acc -= m[static_cast<size_t>(j)] *
             bell_polynomial(n, j,
                             std::span<const Complex>(jet.derivatives.data(),
                                                      static_cast<size_t>(n + 1 - j)));
    jet.derivatives.push_back(acc / m[1]);
  }
  return jet;
}

}  // namespace convlimit
