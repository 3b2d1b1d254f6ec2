#include "convlimit/presets.hpp"

namespace convlimit {

ComplexSequence probabilistic_example() {
  return new_sequence({{-1, 2.0 / 3.0}, {0, 1.0 / 6.0}, {1, 1.0 / 6.0}});
}

ComplexSequence o3_scheme(double la) {
  if (!(la > -1.0 && la < 1.0) || la == 0.0)
    throw Error(Errc::InvalidArgument, "Courant number must lie in (-1,1) and be nonzero");
  const double m2 = -la * (1.0 - la * la) / 6.0;
  const double m1 = la * (1.0 + la) * (2.0 - la) / 2.0;
  const double z0 = (1.0 - la * la) * (2.0 - la) / 2.0;
  const double p1 = -la * (1.0 - la) * (2.0 - la) / 6.0;
  return new_sequence({{-2, m2}, {-1, m1}, {0, z0}, {1, p1}});
}

}  // namespace convlimit
