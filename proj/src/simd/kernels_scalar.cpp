#include <algorithm>

#include "nonlocal/simd.hpp"

namespace nonlocal::simd::scalar {

double dot(std::span<const double> x, std::span<const double> y) {
  // Four interleaved partial sums, matching the lane layout of the vector
  // variant so both paths round similarly.
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc[0] += x[i] * y[i];
    acc[1] += x[i + 1] * y[i + 1];
    acc[2] += x[i + 2] * y[i + 2];
    acc[3] += x[i + 3] * y[i + 3];
  }
  double sum = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void band_symv(std::size_t n, std::size_t halfband, std::span<const double> packed,
               std::span<const double> x, std::span<double> y) {
  const std::size_t stride = halfband + 1;
  std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = std::min(stride, n - i);
    const auto row = packed.subspan(i * stride, len);
    y[i] += dot(row, x.subspan(i, len));
    if (len > 1) axpy(x[i], row.subspan(1), y.subspan(i + 1, len - 1));
  }
}

}  // namespace nonlocal::simd::scalar
