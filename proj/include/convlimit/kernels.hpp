#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace convlimit {

using Complex = std::complex<double>;

namespace kernels {

// Neumaier compensated accumulator. Used inside the convolution kernels so
// that long products of sequences keep componentwise errors near one ulp
// per term instead of growing with the overlap length.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) noexcept {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + comp; }
};

struct ComplexCompensatedSum {
  CompensatedSum re, im;
  void add(const Complex& z) noexcept {
    re.add(z.real());
    im.add(z.imag());
  }
  Complex value() const noexcept { return {re.value(), im.value()}; }
};

// Worker-count control shared by all parallel kernels. `set_jobs(0)` restores
// the hardware default. Results never depend on the worker count: every
// output element is reduced in a fixed serial order by exactly one worker.
void set_jobs(int jobs);
int jobs();

// out[k] = sum_l a[l] * b[k - l], out.size() == a.size() + b.size() - 1.
void convolve_serial(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> out);
void convolve_parallel(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out);

// Serial reference kept so the parallel path can be checked against it.
void convolve(std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out, bool parallel);

// Deterministic parallel map: f(i) for i in [0, n). Each index is handled by
// one worker; f must only write state owned by its index.
void parallel_for(int n, const std::function<void(int)>& f, bool parallel = true);

}  // namespace kernels
}  // namespace convlimit
