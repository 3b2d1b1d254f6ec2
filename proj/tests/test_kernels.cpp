#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "convlimit/kernels.hpp"

using namespace convlimit;

namespace {

std::vector<Complex> make_complex_noise(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Complex> v(static_cast<size_t>(n));
  for (Complex& c : v) c = Complex(uni(rng), uni(rng));
  return v;
}

}  // namespace

TEST_CASE("compensated sum recovers badly conditioned totals") {
  kernels::CompensatedSum acc;
  acc.add(1.0);
  acc.add(1e100);
  acc.add(1.0);
  acc.add(-1e100);
  CHECK(acc.value() == doctest::Approx(2.0));
}

TEST_CASE("parallel convolution matches the serial reference bitwise") {
  for (int na : {1, 7, 64, 1000}) {
    for (int nb : {1, 13, 501, 3000}) {
      const auto a = make_complex_noise(na, 17u * static_cast<unsigned>(na) + 1);
      const auto b = make_complex_noise(nb, 23u * static_cast<unsigned>(nb) + 5);
      std::vector<Complex> out_s(static_cast<size_t>(na + nb - 1));
      std::vector<Complex> out_p(out_s.size());
      kernels::convolve_serial(a, b, out_s);
      kernels::convolve_parallel(a, b, out_p);
      CHECK(out_s == out_p);
    }
  }
}

TEST_CASE("worker cap does not change convolution results") {
  const auto a = make_complex_noise(700, 3);
  const auto b = make_complex_noise(900, 4);
  std::vector<Complex> one(static_cast<size_t>(1599)), many(static_cast<size_t>(1599));
  kernels::set_jobs(1);
  kernels::convolve_parallel(a, b, one);
  kernels::set_jobs(0);
  kernels::convolve_parallel(a, b, many);
  CHECK(one == many);
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(997, 0);
  kernels::parallel_for(997, [&](int i) { hits[static_cast<size_t>(i)] += 1; });
  for (int h : hits) CHECK(h == 1);
}
