#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "convlimit/error.hpp"
#include "convlimit/kernels.hpp"

namespace convlimit {

/// Common stencil of the operator and the identity, derived from the support.
struct StencilBounds {
  int r = 0;
  int p = 0;
};

/// Finitely supported complex sequence on Z, stored densely over the trimmed
/// support. Coefficients at both support ends are nonzero, all values finite.
class ComplexSequence {
 public:
  ComplexSequence(int support_min, std::vector<Complex> coefficients);

  static ComplexSequence dirac() { return ComplexSequence(0, {Complex(1.0, 0.0)}); }

  int support_min() const noexcept { return support_min_; }
  int support_max() const noexcept {
    return support_min_ + static_cast<int>(coeffs_.size()) - 1;
  }
  int size() const noexcept { return static_cast<int>(coeffs_.size()); }

  /// Coefficient at offset j (zero outside the support).
  Complex operator[](int j) const noexcept {
    int i = j - support_min_;
    if (i < 0 || i >= size()) return {};
    return coeffs_[static_cast<size_t>(i)];
  }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  /// At least two nonzero coefficients.
  bool satisfies_h1() const noexcept;

  int nonzero_count() const noexcept;

  StencilBounds stencil() const noexcept;

  /// b_j = a_{-j}
  ComplexSequence reflected() const;

  ComplexSequence scaled(Complex factor) const;

 private:
  int support_min_;
  std::vector<Complex> coeffs_;
};

/// Builds a trimmed sequence from sparse entries.
/// Throws AllZero when every value vanishes, DuplicateOffset on repeats.
ComplexSequence new_sequence(const std::vector<std::pair<int, Complex>>& entries);

/// (a * b)_j = sum_l a_l b_{j-l}
ComplexSequence convolve(const ComplexSequence& a, const ComplexSequence& b,
                         bool parallel = true);

/// n-th convolution power of the reflected sequence applied to the Dirac mass.
/// Exactly zero outside [-n*p, n*r]. Throws Overflow past max_coefficients.
/// Componentwise roundoff is O(n * ulp * norm1(a)^n) from the n compensated
/// convolution passes.
ComplexSequence green_function(const ComplexSequence& a, int n,
                               std::int64_t max_coefficients = 1'000'000);

/// b_j = a_{j+J}
ComplexSequence shift_sequence(const ComplexSequence& a, int J);

enum class Lq { One, Two, Inf };

double lq_norm(const ComplexSequence& a, Lq q);

/// Streams the powers delta, G^1, G^2, ... without recomputation; used where
/// a whole range of powers is consumed.
class GreenIterator {
 public:
  explicit GreenIterator(const ComplexSequence& a, std::int64_t max_coefficients = 50'000'000);

  /// Advances to the given power (monotonically increasing calls only).
  const ComplexSequence& advance_to(int n);
  int power() const noexcept { return n_; }

 private:
  ComplexSequence reflected_;
  ComplexSequence current_;
  std::int64_t max_coefficients_;
  int n_ = 0;
};

}  // namespace convlimit
