#include "convlimit/kernels.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace convlimit::kernels {

namespace {
std::atomic<int> g_jobs{0};  // 0 = hardware default
}

void set_jobs(int j) { g_jobs.store(j < 0 ? 0 : j); }

int jobs() {
  int j = g_jobs.load();
#ifdef _OPENMP
  if (j <= 0) return omp_get_max_threads();
  return j;
#else
  (void)j;
  return 1;
#endif
}

namespace {

inline Complex dot_at(std::span<const Complex> a, std::span<const Complex> b, int k) {
  // overlap of a[l] with b[k-l]
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int lo = std::max(0, k - nb + 1);
  const int hi = std::min(na - 1, k);
  ComplexCompensatedSum acc;
  for (int l = lo; l <= hi; ++l) acc.add(a[l] * b[k - l]);
  return acc.value();
}

}  // namespace

void convolve_serial(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> out) {
  const int n = static_cast<int>(out.size());
  for (int k = 0; k < n; ++k) out[k] = dot_at(a, b, k);
}

void convolve_parallel(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out) {
  const int n = static_cast<int>(out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs())
#endif
  for (int k = 0; k < n; ++k) out[k] = dot_at(a, b, k);
}

void convolve(std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out, bool parallel) {
  // Parallel dispatch only pays off once the output is reasonably long.
  if (parallel && out.size() >= 2048 && jobs() > 1)
    convolve_parallel(a, b, out);
  else
    convolve_serial(a, b, out);
}

void parallel_for(int n, const std::function<void(int)>& f, bool parallel) {
  if (!parallel || n < 2 || jobs() <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs())
  for (int i = 0; i < n; ++i) f(i);
#else
  for (int i = 0; i < n; ++i) f(i);
#endif
}

}  // namespace convlimit::kernels
