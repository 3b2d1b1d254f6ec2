#pragma once

#include <complex>
#include <span>

#include "convlimit/error.hpp"

namespace convlimit {

using Complex = std::complex<double>;

/// Exact binomial coefficient as a double; n must stay small enough that the
/// value is integer-representable (enforced, n <= 48).
double binomial(int n, int k);

/// Partial exponential Bell polynomial B_{n,j}(X_1, ..., X_{n+1-j}).
/// args[i] is X_{i+1}. Throws IndexOutOfRange for j outside [1, n] or a
/// too-short argument list.
Complex bell_polynomial(int n, int j, std::span<const Complex> args);

}  // namespace convlimit
