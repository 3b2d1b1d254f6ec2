#include "convlimit/spatial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "convlimit/symbol.hpp"

namespace convlimit {

namespace {

constexpr double kPi = std::numbers::pi;

Complex cis(double t) { return {std::cos(t), std::sin(t)}; }

Complex resolvent_coefficient(const ComplexSequence& a, Complex z, int j) {
  return (j == 0 ? z : Complex{}) - a[j];
}

double annulus_margin(const ComplexSequence& a) {
  // Boundary coefficients lie strictly inside the unit disk for admissible
  // sequences; the working annulus keeps half the available log-margin.
  const StencilBounds st = a.stencil();
  const double m = std::max(std::abs(a[-st.r]), std::abs(a[st.p]));
  if (m >= 1.0) return 1.0;
  return std::exp(0.5 * std::log(m));  // exp(-eta/2) with eta = -log m
}

}  // namespace

CompanionMatrix companion_matrix(const ComplexSequence& a, Complex z) {
  const StencilBounds st = a.stencil();
  const int dim = st.r + st.p;
  if (dim < 1) throw Error(Errc::InvalidArgument, "stencil too small for a companion matrix");
  if (std::abs(z) <= annulus_margin(a))
    throw Error(Errc::InvalidArgument, "|z| inside the boundary-coefficient margin");
  const Complex ap = resolvent_coefficient(a, z, st.p);
  const Complex ar = resolvent_coefficient(a, z, -st.r);
  if (ap == Complex{} || ar == Complex{})
    throw Error(Errc::IllConditioned, "boundary resolvent coefficient vanishes");

  CompanionMatrix m;
  m.z = z;
  m.r = st.r;
  m.p = st.p;
  m.entries.assign(static_cast<size_t>(dim) * dim, Complex{});
  for (int col = 0; col < dim; ++col)
    m.entries[static_cast<size_t>(col)] = -resolvent_coefficient(a, z, st.p - 1 - col) / ap;
  for (int row = 1; row < dim; ++row)
    m.entries[static_cast<size_t>(row * dim + row - 1)] = 1.0;
  return m;
}

SpectralSplit spectral_split(const ComplexSequence& a, Complex z, double eps_unit,
                             double sym_tol) {
  const CompanionMatrix cm = companion_matrix(a, z);
  const int n = cm.dim();
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cm.at(i, j);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::IllConditioned, "eigenvalue solver failed");

  SpectralSplit split;
  for (int i = 0; i < n; ++i) {
    const Complex kappa = solver.eigenvalues()(i);
    const double res = std::abs(eval_symbol(a, kappa) - z);
    split.max_symbol_residual = std::max(split.max_symbol_residual, res);
    if (res > sym_tol)
      throw Error(Errc::IllConditioned,
                  "eigenvalue violates the symbol equation by " + std::to_string(res));
    const double mod = std::abs(kappa);
    if (mod < 1.0 - eps_unit)
      ++split.n_stable;
    else if (mod > 1.0 + eps_unit)
      ++split.n_unstable;
    else
      ++split.n_unit;
  }
  return split;
}

SpatialGreen spatial_green(const ComplexSequence& a, Complex z, int j_min, int j_max,
                           double tol) {
  if (j_min > j_max) throw Error(Errc::InvalidArgument, "empty window");
  const StencilBounds st = a.stencil();

  {  // distance to the spectrum curve, sampled
    double dist = std::numeric_limits<double>::infinity();
    const int ns = 2048;
    for (int i = 0; i < ns; ++i)
      dist = std::min(dist, std::abs(z - eval_symbol(a, cis(2.0 * kPi * i / ns))));
    if (dist < 10.0 * tol)
      throw Error(Errc::OnSpectrum, "sampled distance to the spectrum is " +
                                        std::to_string(dist));
  }

  const int lo = j_min - st.r;
  const int hi = j_max + st.p;
  const int wide = hi - lo + 1;

  auto compute = [&](int nodes) {
    std::vector<Complex> twiddle(static_cast<size_t>(nodes));
    std::vector<Complex> inv_val(static_cast<size_t>(nodes));
    for (int q = 0; q < nodes; ++q) {
      twiddle[static_cast<size_t>(q)] = cis(2.0 * kPi * q / nodes);
      inv_val[static_cast<size_t>(q)] = 1.0 / (z - eval_symbol(a, twiddle[static_cast<size_t>(q)]));
    }
    std::vector<Complex> g(static_cast<size_t>(wide), Complex{});
    for (int idx = 0; idx < wide; ++idx) {
      const std::int64_t j = lo + idx;
      kernels::ComplexCompensatedSum acc;
      for (int q = 0; q < nodes; ++q) {
        std::int64_t m = (j * q) % nodes;  // e^{i j t_q} from the node table, exact
        if (m < 0) m += nodes;
        acc.add(twiddle[static_cast<size_t>(m)] * inv_val[static_cast<size_t>(q)]);
      }
      g[static_cast<size_t>(idx)] = acc.value() / static_cast<double>(nodes);
    }
    return g;
  };

  int nodes = 1024;
  while (nodes < 4 * wide) nodes *= 2;
  std::vector<Complex> g = compute(nodes);
  for (int round = 0; round < 8; ++round) {
    const std::vector<Complex> g2 = compute(2 * nodes);
    double diff = 0.0;
    for (int i = 0; i < wide; ++i)
      diff = std::max(diff, std::abs(g[static_cast<size_t>(i)] - g2[static_cast<size_t>(i)]));
    g = g2;
    nodes *= 2;
    if (diff <= 0.5 * tol) break;
    if (round == 7)
      throw Error(Errc::QuadratureNonConvergence, "resolvent quadrature did not settle");
  }

  SpatialGreen out;
  out.z = z;
  out.j_min = j_min;
  out.j_max = j_max;
  out.values.assign(g.begin() + st.r, g.end() - st.p);

  double residual = 0.0;
  for (int j = j_min; j <= j_max; ++j) {
    kernels::ComplexCompensatedSum acc;
    for (int l = -st.r; l <= st.p; ++l)
      acc.add(resolvent_coefficient(a, z, l) * g[static_cast<size_t>(j + l - lo)]);
    Complex defect = acc.value();
    if (j == 0) defect -= 1.0;
    residual = std::max(residual, std::abs(defect));
  }
  out.residual = residual;
  if (residual > tol)
    throw Error(Errc::QuadratureNonConvergence,
                "resolvent residual " + std::to_string(residual) + " above tolerance");
  return out;
}

Complex contour_reconstruct(const ComplexSequence& a, int n, int j, double radius,
                            int quad_points, double tol) {
  auto table = contour_reconstruct_table(a, n, radius, quad_points, j, j, tol,
                                         /*parallel=*/false);
  return table[static_cast<size_t>(n)][0];
}

std::vector<std::vector<Complex>> contour_reconstruct_table(const ComplexSequence& a, int n_max,
                                                            double radius, int quad_points,
                                                            int j_min, int j_max, double tol,
                                                            bool parallel) {
  if (!(radius > 1.0)) throw Error(Errc::InvalidArgument, "contour radius must exceed 1");
  if (quad_points < 64) throw Error(Errc::InvalidArgument, "need at least 64 contour nodes");
  if (n_max < 0) throw Error(Errc::InvalidArgument, "negative power");

  const int width = j_max - j_min + 1;
  std::vector<SpatialGreen> per_node(static_cast<size_t>(quad_points));
  kernels::parallel_for(
      quad_points,
      [&](int q) {
        const Complex zq = radius * cis(2.0 * kPi * q / quad_points);
        per_node[static_cast<size_t>(q)] = spatial_green(a, zq, j_min, j_max, tol);
      },
      parallel);

  // (1/2 i pi) \oint z^n G_j(z) dz = (1/Q) sum_q z_q^{n+1} G_j(z_q)
  std::vector<std::vector<Complex>> out(static_cast<size_t>(n_max) + 1);
  std::vector<Complex> zpow(static_cast<size_t>(quad_points));
  for (int q = 0; q < quad_points; ++q)
    zpow[static_cast<size_t>(q)] = radius * cis(2.0 * kPi * q / quad_points);
  for (int n = 0; n <= n_max; ++n) {
    out[static_cast<size_t>(n)].assign(static_cast<size_t>(width), Complex{});
    for (int idx = 0; idx < width; ++idx) {
      kernels::ComplexCompensatedSum acc;
      for (int q = 0; q < quad_points; ++q)
        acc.add(zpow[static_cast<size_t>(q)] *
                per_node[static_cast<size_t>(q)].values[static_cast<size_t>(idx)]);
      out[static_cast<size_t>(n)][static_cast<size_t>(idx)] =
          acc.value() / static_cast<double>(quad_points);
    }
    if (n < n_max)
      for (int q = 0; q < quad_points; ++q)
        zpow[static_cast<size_t>(q)] *= radius * cis(2.0 * kPi * q / quad_points);
  }
  return out;
}

}  // namespace convlimit
