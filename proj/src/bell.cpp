#include "convlimit/bell.hpp"

#include <array>
#include <string>
#include <vector>

namespace convlimit {

namespace {

constexpr int kMaxBinomial = 48;  // C(48,24) < 2^53, still exact in double

const std::array<std::array<double, kMaxBinomial + 1>, kMaxBinomial + 1>& binomial_table() {
  static const auto table = [] {
    std::array<std::array<double, kMaxBinomial + 1>, kMaxBinomial + 1> t{};
    for (int n = 0; n <= kMaxBinomial; ++n) {
      t[n][0] = 1.0;
      for (int k = 1; k <= n; ++k)
        t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0.0);
    }
    return t;
  }();
  return table;
}

}  // namespace

double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (n > kMaxBinomial)
    throw Error(Errc::IndexOutOfRange, "binomial order " + std::to_string(n) + " too large");
  return binomial_table()[n][k];
}

Complex bell_polynomial(int n, int j, std::span<const Complex> args) {
  if (n < 0 || j < 0 || (n == 0) != (j == 0) || j > n)
    throw Error(Errc::IndexOutOfRange,
                "B_{" + std::to_string(n) + "," + std::to_string(j) + "} undefined");
  if (n == 0) return 1.0;
  if (static_cast<int>(args.size()) < n + 1 - j)
    throw Error(Errc::IndexOutOfRange, "argument list shorter than n+1-j");

  // B_{n,j} = sum_i C(n-1, i-1) X_i B_{n-i, j-1}, filled row by row.
  // table[m][q] = B_{m,q}; only q <= j and m <= n are needed.
  std::vector<std::vector<Complex>> table(static_cast<size_t>(n) + 1,
                                          std::vector<Complex>(static_cast<size_t>(j) + 1));
  table[0][0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    for (int q = 1; q <= std::min(m, j); ++q) {
      Complex acc = 0.0;
      const int imax = m + 1 - q;
      for (int i = 1; i <= imax; ++i)
        acc += binomial(m - 1, i - 1) * args[static_cast<size_t>(i - 1)] *
               table[static_cast<size_t>(m - i)][static_cast<size_t>(q - 1)];
      table[static_cast<size_t>(m)][static_cast<size_t>(q)] = acc;
    }
  }
  return table[static_cast<size_t>(n)][static_cast<size_t>(j)];
}

}  // namespace convlimit
