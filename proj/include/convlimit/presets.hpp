#pragma once

#include "convlimit/sequence.hpp"

namespace convlimit {

/// Three-point random-walk weights 2/3, 1/6, 1/6 at offsets -1, 0, 1.
ComplexSequence probabilistic_example();

/// Third-order upwind transport stencil at the given Courant number,
/// nonzero on offsets -2..1. Requires lambda_a in (-1, 1) \ {0}.
ComplexSequence o3_scheme(double lambda_a);

}  // namespace convlimit
