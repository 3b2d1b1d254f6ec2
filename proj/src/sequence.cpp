#include "convlimit/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace convlimit {

namespace {

bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

ComplexSequence::ComplexSequence(int support_min, std::vector<Complex> coefficients)
    : support_min_(support_min), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw Error(Errc::AllZero, "sequence has no coefficients");
  for (const Complex& c : coeffs_)
    if (!is_finite(c)) throw Error(Errc::InvalidArgument, "non-finite coefficient");
  // trim exact zeros at both ends
  size_t lo = 0, hi = coeffs_.size();
  while (lo < hi && coeffs_[lo] == Complex{}) ++lo;
  while (hi > lo && coeffs_[hi - 1] == Complex{}) --hi;
  if (lo == hi) throw Error(Errc::AllZero, "all coefficients are zero");
  if (lo > 0 || hi < coeffs_.size()) {
    coeffs_ = std::vector<Complex>(coeffs_.begin() + static_cast<long>(lo),
                                   coeffs_.begin() + static_cast<long>(hi));
    support_min_ += static_cast<int>(lo);
  }
}

bool ComplexSequence::satisfies_h1() const noexcept { return nonzero_count() >= 2; }

int ComplexSequence::nonzero_count() const noexcept {
  int n = 0;
  for (const Complex& c : coeffs_)
    if (c != Complex{}) ++n;
  return n;
}

StencilBounds ComplexSequence::stencil() const noexcept {
  const int km = support_min();
  const int kM = support_max();
  if (kM <= -1) return {-km, 0};
  if (km >= 1) return {0, kM};
  return {-km, kM};
}

ComplexSequence ComplexSequence::reflected() const {
  std::vector<Complex> rev(coeffs_.rbegin(), coeffs_.rend());
  return ComplexSequence(-support_max(), std::move(rev));
}

ComplexSequence ComplexSequence::scaled(Complex factor) const {
  std::vector<Complex> c(coeffs_);
  for (Complex& v : c) v *= factor;
  return ComplexSequence(support_min_, std::move(c));
}

ComplexSequence new_sequence(const std::vector<std::pair<int, Complex>>& entries) {
  if (entries.empty()) throw Error(Errc::InvalidArgument, "no entries given");
  std::map<int, Complex> by_offset;
  for (const auto& [offset, value] : entries) {
    if (!by_offset.emplace(offset, value).second)
      throw Error(Errc::DuplicateOffset, "offset " + std::to_string(offset) + " repeats");
  }
  bool any_nonzero = false;
  for (const auto& [offset, value] : by_offset)
    if (value != Complex{}) any_nonzero = true;
  if (!any_nonzero) throw Error(Errc::AllZero, "all entry values are zero");

  const int lo = by_offset.begin()->first;
  const int hi = by_offset.rbegin()->first;
  std::vector<Complex> dense(static_cast<size_t>(hi - lo + 1));
  for (const auto& [offset, value] : by_offset)
    dense[static_cast<size_t>(offset - lo)] = value;
  return ComplexSequence(lo, std::move(dense));
}

ComplexSequence convolve(const ComplexSequence& a, const ComplexSequence& b, bool parallel) {
  std::vector<Complex> out(static_cast<size_t>(a.size() + b.size() - 1));
  kernels::convolve(a.coefficients(), b.coefficients(), out, parallel);
  return ComplexSequence(a.support_min() + b.support_min(), std::move(out));
}

ComplexSequence green_function(const ComplexSequence& a, int n, std::int64_t max_coefficients) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative power");
  const StencilBounds st = a.stencil();
  const std::int64_t final_size =
      1 + static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(st.r) + st.p);
  if (final_size > max_coefficients)
    throw Error(Errc::Overflow, "power " + std::to_string(n) + " needs " +
                                    std::to_string(final_size) + " coefficients");
  ComplexSequence b = a.reflected();
  ComplexSequence g = ComplexSequence::dirac();
  for (int i = 0; i < n; ++i) g = convolve(b, g);
  return g;
}

ComplexSequence shift_sequence(const ComplexSequence& a, int J) {
  std::vector<Complex> c(a.coefficients().begin(), a.coefficients().end());
  return ComplexSequence(a.support_min() - J, std::move(c));
}

double lq_norm(const ComplexSequence& a, Lq q) {
  kernels::CompensatedSum acc;
  switch (q) {
    case Lq::One:
      for (const Complex& c : a.coefficients()) acc.add(std::abs(c));
      return acc.value();
    case Lq::Two:
      for (const Complex& c : a.coefficients()) acc.add(std::norm(c));
      return std::sqrt(acc.value());
    case Lq::Inf: {
      double m = 0.0;
      for (const Complex& c : a.coefficients()) m = std::max(m, std::abs(c));
      return m;
    }
  }
  return 0.0;
}

GreenIterator::GreenIterator(const ComplexSequence& a, std::int64_t max_coefficients)
    : reflected_(a.reflected()),
      current_(ComplexSequence::dirac()),
      max_coefficients_(max_coefficients) {}

const ComplexSequence& GreenIterator::advance_to(int n) {
  if (n < n_) throw Error(Errc::InvalidArgument, "green iterator cannot rewind");
  while (n_ < n) {
    if (current_.size() + reflected_.size() - 1 > max_coefficients_)
      throw Error(Errc::Overflow, "green function too long");
    current_ = convolve(reflected_, current_);
    ++n_;
  }
  return current_;
}

}  // namespace convlimit
