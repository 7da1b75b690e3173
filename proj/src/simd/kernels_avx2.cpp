#include <immintrin.h>

#include <algorithm>

#include "nonlocal/simd.hpp"

namespace nonlocal::simd::avx2 {

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i), acc);
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (a0 + a2, a1 + a3)
  double sum = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d yi = _mm256_loadu_pd(y.data() + i);
    _mm256_storeu_pd(y.data() + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x.data() + i), yi));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
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

}  // namespace nonlocal::simd::avx2
