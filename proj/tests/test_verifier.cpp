#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "convlimit/presets.hpp"
#include "convlimit/verifier.hpp"

#include "generators.hpp"

using namespace convlimit;

namespace {

struct Pipeline {
  ComplexSequence a;
  SymbolProfile profile;
  std::vector<PointExpansion> expansions;

  Pipeline(const ComplexSequence& seq, int s, bool reduced)
      : a(seq), profile(check_hypotheses(seq)),
        expansions(build_point_expansions(seq, profile, {s}, reduced)) {
    REQUIRE(profile.report.admissible());
  }
};

}  // namespace

TEST_CASE("scaled coordinates") {
  const SymbolProfile prof = check_hypotheses(probabilistic_example());
  const TangencyPoint& pt = prof.points[0];  // alpha = 1/2, mu = 1

  const ScaledCoordinates on_axis = scaled_coordinates(pt, 16, 8);
  CHECK(on_axis.X == 0.0);
  REQUIRE(on_axis.Y.has_value());
  CHECK(*on_axis.Y == 0.0);

  const ScaledCoordinates off = scaled_coordinates(pt, 100, 40);
  CHECK(off.X == doctest::Approx(1.0));
  REQUIRE(off.Y.has_value());
  CHECK(*off.Y == doctest::Approx(10.0 / std::sqrt(80.0)));

  // the secondary coordinate needs j and the drift on the same side
  CHECK_FALSE(scaled_coordinates(pt, 10, -3).Y.has_value());

  // a deeper jet request only sharpens the expansion, never changes it
  const auto base = build_point_expansions(probabilistic_example(), prof, {2});
  const auto deep = build_point_expansions(probabilistic_example(), prof, {2}, false, 12);
  for (const auto& [key, c] : base[0].polys[1].terms) {
    const auto it = deep[0].polys[1].terms.find(key);
    REQUIRE(it != deep[0].polys[1].terms.end());
    CHECK(std::abs(c - it->second) < 1e-12);
  }
}

TEST_CASE("attractor profile") {
  const ComplexSequence a = probabilistic_example();
  const SymbolProfile prof = check_hypotheses(a);
  const TangencyPoint& pt = prof.points[0];

  SUBCASE("gaussian closed form with variance 2 beta") {
    const double V = 7.0 / 12.0;
    for (const auto [n, j] : {std::pair{5, 2}, {40, 20}, {40, 3}, {100, 55}}) {
      const double d = j - n * 0.5;
      const double expect = std::exp(-d * d / (2.0 * V * n)) /
                            std::sqrt(2.0 * std::numbers::pi * V * n);
      CHECK(std::abs(attractor(pt, n, j) - Complex(expect)) <= 1e-13);
    }
  }

  SUBCASE("trivial phases give a positive real profile") {
    CHECK(pt.kappa.real() == doctest::Approx(1.0));
    const Complex v = attractor(pt, 17, 9);
    CHECK(std::abs(v.imag()) <= 1e-14);
    CHECK(v.real() > 0.0);
  }

  SUBCASE("n = 1 evaluates the profile at the drift") {
    const GeneralizedGaussianSpec spec(1, pt.beta);
    CHECK(std::abs(attractor(pt, 1, 0) - eval_H(spec, 0, -pt.alpha)) <= 1e-14);
  }
}

TEST_CASE("expansion values") {
  const ComplexSequence a = probabilistic_example();
  const SymbolProfile prof = check_hypotheses(a);

  SUBCASE("depth one reproduces the attractor") {
    const auto exps = build_point_expansions(a, prof, {1});
    for (const auto [n, j] : {std::pair{3, 1}, {25, 12}, {60, 10}, {60, 47}}) {
      Complex attr = 0.0;
      for (const TangencyPoint& pt : prof.points) attr += attractor(pt, n, j);
      CHECK(std::abs(expansion_value(prof, exps, n, j) - attr) <= 1e-12);
    }
  }

  SUBCASE("depth two adds the classical skewness correction") {
    const auto exps = build_point_expansions(a, prof, {2}, /*reduced=*/true);
    const double V = 7.0 / 12.0;
    const double third_central = -0.5;
    auto q1 = [&](double x) {
      return -third_central / (6.0 * std::sqrt(2.0 * std::numbers::pi) * V * V) *
             (x * x * x - 3.0 * x) * std::exp(-0.5 * x * x);
    };
    for (const auto [n, j] : {std::pair{10, 4}, {50, 22}, {50, 30}, {200, 104}}) {
      const double X = (n * 0.5 - j) / std::sqrt(static_cast<double>(n));
      Complex expect = attractor(prof.points[0], n, j);
      expect += q1(X / std::sqrt(V)) / static_cast<double>(n);
      CHECK(std::abs(expansion_value(prof, exps, n, j) - expect) <= 1e-12);
    }
  }

  SUBCASE("finite far outside the support where the power vanishes") {
    const auto exps = build_point_expansions(a, prof, {2});
    const Complex v = expansion_value(prof, exps, 1, 40);
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
    CHECK(green_function(a, 1)[40] == Complex(0.0));
  }

  SUBCASE("depth zero contributes nothing") {
    const auto exps = build_point_expansions(a, prof, {0});
    CHECK(expansion_value(prof, exps, 12, 6) == Complex(0.0));
  }
}

TEST_CASE("error table") {
  const Pipeline pl(probabilistic_example(), 2, /*reduced=*/true);
  std::vector<int> ns{10, 20, 40, 80, 160};
  const auto report = error_table(pl.a, pl.profile, pl.expansions, ns);

  SUBCASE("rows cover the exact support window") {
    size_t idx = 0;
    for (int n : ns) {
      const int lo = -n, hi = n;  // r = p = 1
      for (int j = lo; j <= hi; ++j, ++idx) {
        REQUIRE(idx < report.rows.size());
        CHECK(report.rows[idx].n == n);
        CHECK(report.rows[idx].j == j);
      }
    }
    CHECK(idx == report.rows.size());
  }

  SUBCASE("scaled sup follows the depth-two rate") {
    CHECK(report.scale_exponent == doctest::Approx(1.5));
    double lo = 0.0, hi = 0.0;
    for (const auto& [n, v] : report.scaled_sup) {
      double& side = (n <= 80) ? lo : hi;
      side = std::max(side, v);
    }
    CHECK(hi <= 1.5 * lo);
  }

  SUBCASE("attractor-level run: depth one is bounded at the first-order rate") {
    const auto s1 = build_point_expansions(pl.a, pl.profile, {1});
    const auto r1 = error_table(pl.a, pl.profile, s1, ns);
    CHECK(r1.scale_exponent == doctest::Approx(1.0));
    double lo = 0.0, hi = 0.0;
    for (const auto& [n, v] : r1.scaled_sup) {
      double& side = (n <= 80) ? lo : hi;
      side = std::max(side, v);
    }
    CHECK(hi <= 1.5 * lo);
  }

  SUBCASE("serial and parallel tables agree bitwise") {
    ErrorTableOptions serial;
    serial.parallel = false;
    const auto rs = error_table(pl.a, pl.profile, pl.expansions, ns, serial);
    REQUIRE(rs.rows.size() == report.rows.size());
    for (size_t i = 0; i < rs.rows.size(); ++i) {
      CHECK(rs.rows[i].green == report.rows[i].green);
      CHECK(rs.rows[i].expansion == report.rows[i].expansion);
    }
  }

  SUBCASE("widened window doubles the coverage and stays consistent") {
    ErrorTableOptions wide;
    wide.widened_window = true;
    std::vector<int> small{10, 20};
    const auto rw = error_table(pl.a, pl.profile, pl.expansions, small, wide);
    CHECK(rw.rows.front().j == -20);
    CHECK(rw.rows.front().green == Complex(0.0));  // outside the support cone
    const auto env = envelope_check(rw, pl.profile);
    CHECK(env.ok);
  }
}

TEST_CASE("envelope verdicts") {
  const Pipeline pl(probabilistic_example(), 2, /*reduced=*/true);
  std::vector<int> ns;
  for (int n = 10; n <= 300; n += 10) ns.push_back(n);
  const auto report = error_table(pl.a, pl.profile, pl.expansions, ns);

  const RemainderEnvelope env = envelope_check(report, pl.profile);
  CHECK(env.ok);
  CHECK(env.C > 0.0);
  CHECK(env.c > 0.0);

  // negative control: doubling the claimed decay exponent must fail
  const RemainderEnvelope bad = envelope_check(report, pl.profile, 0.25, 2.0);
  CHECK_FALSE(bad.ok);
  CHECK(bad.C_upper > 2.0 * bad.C_lower);
}

TEST_CASE("cdf comparison for nonnegative unit-mass sequences") {
  const ComplexSequence a = probabilistic_example();
  std::vector<int> ns{1, 10, 50, 100, 200};
  const auto dev = berry_esseen_check(a, ns);
  for (int n : ns) {
    CHECK(std::isfinite(dev.at(n)));
    CHECK(dev.at(n) > 0.0);
  }
  double lo = 0.0, hi = 0.0;
  for (const auto& [n, v] : dev)
    if (n >= 10) (n <= 100 ? lo : hi) = std::max(n <= 100 ? lo : hi, v);
  CHECK(hi <= 1.5 * lo);

  // zero-drift walk is still a probability distribution; the check runs
  const auto sym = berry_esseen_check(new_sequence({{-1, 0.5}, {1, 0.5}}),
                                      std::vector<int>{10, 40});
  CHECK(sym.at(40) < 1.0);

  CHECK_THROWS_WITH_AS(berry_esseen_check(o3_scheme(0.5), ns),
                       doctest::Contains("NotProbabilistic"), Error);
  CHECK_THROWS_WITH_AS(
      berry_esseen_check(probabilistic_example().scaled(Complex(0.0, 1.0)), ns),
      doctest::Contains("NotProbabilistic"), Error);
}

TEST_CASE("two superposed waves with opposite drifts") {
  const ComplexSequence a = generators::conjugate_pair_example();
  const SymbolProfile prof = check_hypotheses(a);
  REQUIRE(prof.report.admissible());
  REQUIRE(prof.points.size() == 2);

  const auto exps = build_point_expansions(a, prof, {2, 2});
  std::vector<int> ns{10, 20, 40, 80, 160};
  const auto report = error_table(a, prof, exps, ns);

  // depth-two rate holds for the superposition as well
  CHECK(report.scale_exponent == doctest::Approx(1.5));
  double lo = 0.0, hi = 0.0;
  for (const auto& [n, v] : report.scaled_sup) {
    double& side = (n <= 80) ? lo : hi;
    side = std::max(side, v);
  }
  CHECK(hi <= 1.5 * lo);
  CHECK(envelope_check(report, prof).ok);

  // at depth one the expansion is the plain sum of the two attractors
  const auto s1 = build_point_expansions(a, prof, {1, 1});
  for (const auto [n, j] : {std::pair{12, 5}, {30, -12}, {30, 11}}) {
    Complex attr = 0.0;
    for (const TangencyPoint& pt : prof.points) attr += attractor(pt, n, j);
    CHECK(std::abs(expansion_value(prof, s1, n, j) - attr) <= 1e-12);
  }
}

TEST_CASE("phase covariance of the whole pipeline") {
  const ComplexSequence a = probabilistic_example();
  const double omega = 0.73;
  const ComplexSequence rotated = a.scaled(std::polar(1.0, omega));

  const Pipeline base(a, 2, true);
  const Pipeline rot(rotated, 2, true);
  CHECK(std::abs(rot.profile.points[0].z - std::polar(1.0, omega)) < 1e-9);

  std::vector<int> ns{7, 23, 60};
  const auto rb = error_table(base.a, base.profile, base.expansions, ns);
  const auto rr = error_table(rot.a, rot.profile, rot.expansions, ns);
  REQUIRE(rb.rows.size() == rr.rows.size());
  for (size_t i = 0; i < rb.rows.size(); ++i)
    CHECK(std::abs(rb.rows[i].err_abs - rr.rows[i].err_abs) <= 1e-10);
}

TEST_CASE("shift covariance of the whole pipeline") {
  const ComplexSequence a = probabilistic_example();
  const int J = 1;
  const ComplexSequence shifted = shift_sequence(a, J);

  const Pipeline base(a, 2, true);
  const Pipeline moved(shifted, 2, true);
  CHECK(moved.profile.points[0].alpha == doctest::Approx(0.5 + J));

  std::vector<int> ns{8, 20, 50};
  const auto rb = error_table(base.a, base.profile, base.expansions, ns);
  const auto rm = error_table(moved.a, moved.profile, moved.expansions, ns);

  // row (n, j) of the base maps to (n, j + nJ) of the shifted run
  std::map<std::pair<int, int>, double> moved_err;
  for (const auto& row : rm.rows) moved_err[{row.n, row.j}] = row.err_abs;
  for (const auto& row : rb.rows) {
    const auto it = moved_err.find({row.n, row.j + row.n * J});
    REQUIRE(it != moved_err.end());
    CHECK(std::abs(row.err_abs - it->second) <= 1e-10);
  }
}
