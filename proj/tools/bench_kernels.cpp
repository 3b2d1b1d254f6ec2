// Timing comparison of the serial reference kernels against the OpenMP
// versions. Results must match bitwise; only the wall time may differ.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "convlimit/gaussian.hpp"
#include "convlimit/kernels.hpp"
#include "convlimit/presets.hpp"
#include "convlimit/sequence.hpp"

using namespace convlimit;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& f, int reps) {
  f();  // warm up
  const auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("workers: %d\n\n", kernels::jobs());

  {  // long convolution
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int n = 20000;
    std::vector<Complex> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[static_cast<size_t>(i)] = Complex(uni(rng), uni(rng));
      b[static_cast<size_t>(i)] = Complex(uni(rng), uni(rng));
    }
    std::vector<Complex> out_s(static_cast<size_t>(2 * n - 1));
    std::vector<Complex> out_p(out_s.size());
    const double ts = run_ms([&] { kernels::convolve_serial(a, b, out_s); }, 3);
    const double tp = run_ms([&] { kernels::convolve_parallel(a, b, out_p); }, 3);
    report("convolve 20k x 20k", ts, tp, out_s == out_p);
  }

  {  // convolution-power table
    const ComplexSequence a = o3_scheme(0.5);
    auto power = [&](bool parallel) {
      ComplexSequence g = ComplexSequence::dirac();
      const ComplexSequence b = a.reflected();
      for (int i = 0; i < 3000; ++i) g = convolve(b, g, parallel);
      return g;
    };
    ComplexSequence gs = ComplexSequence::dirac(), gp = ComplexSequence::dirac();
    const double ts = run_ms([&] { gs = power(false); }, 1);
    const double tp = run_ms([&] { gp = power(true); }, 1);
    const bool same = gs.support_min() == gp.support_min() &&
                      std::equal(gs.coefficients().begin(), gs.coefficients().end(),
                                 gp.coefficients().begin());
    report("power table n=3000", ts, tp, same);
  }

  {  // quartic-profile grid
    const GeneralizedGaussianSpec spec(2, 3.0 / 128.0, 1e-12, 8);
    std::vector<double> xs;
    for (double x = -20.0; x <= 20.0; x += 0.05) xs.push_back(x);
    std::vector<Complex> vs, vp;
    const double ts = run_ms([&] { vs = eval_H_grid(spec, 6, xs, false); }, 1);
    const double tp = run_ms([&] { vp = eval_H_grid(spec, 6, xs, true); }, 1);
    report("profile grid 801 pts", ts, tp, vs == vp);
  }

  return 0;
}
