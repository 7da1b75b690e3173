#include "nonlocal/band_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/simd.hpp"

namespace nonlocal {

SymBandMatrix::SymBandMatrix(std::size_t n, std::size_t halfband)
    : n_(n), halfband_(n == 0 ? 0 : std::min(halfband, n - 1)), data_(n * (halfband_ + 1), 0.0) {}

double SymBandMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  if (i > j) std::swap(i, j);
  const std::size_t k = j - i;
  if (k > halfband_) return 0.0;
  return data_[i * (halfband_ + 1) + k];
}

void SymBandMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i > j) std::swap(i, j);
  if (j >= n_ || j - i > halfband_) {
    throw DomainError("SymBandMatrix::set outside the band");
  }
  data_[i * (halfband_ + 1) + (j - i)] = value;
}

Vector SymBandMatrix::multiply(std::span<const double> x) const {
  Vector y(n_);
  multiply(x, y);
  return y;
}

void SymBandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) {
    throw DomainError("SymBandMatrix::multiply dimension mismatch");
  }
  simd::band_symv(n_, halfband_, data_, x, y);
}

double SymBandMatrix::quadratic_form(std::span<const double> x) const {
  return bilinear_form(x, x);
}

double SymBandMatrix::bilinear_form(std::span<const double> x, std::span<const double> y) const {
  const Vector ay = multiply(y);
  return simd::dot(x, ay);
}

SymBandMatrix SymBandMatrix::scaled(double factor) const {
  SymBandMatrix out = *this;
  for (double& v : out.data_) v *= factor;
  return out;
}

SymBandMatrix SymBandMatrix::plus_scaled(const SymBandMatrix& other, double factor) const {
  if (other.n_ != n_) throw DomainError("SymBandMatrix::plus_scaled dimension mismatch");
  SymBandMatrix out(n_, std::max(halfband_, other.halfband_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k <= out.halfband_ && i + k < n_; ++k) {
      out.data_[i * (out.halfband_ + 1) + k] = (*this)(i, i + k) + factor * other(i, i + k);
    }
  }
  return out;
}

DenseMatrix SymBandMatrix::to_dense() const {
  DenseMatrix d(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k <= halfband_ && i + k < n_; ++k) {
      const double v = data_[i * (halfband_ + 1) + k];
      d(i, i + k) = v;
      d(i + k, i) = v;
    }
  }
  return d;
}

Vector SymBandMatrix::diagonal() const {
  Vector d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = data_[i * (halfband_ + 1)];
  return d;
}

BandCholesky::BandCholesky(const SymBandMatrix& a)
    : n_(a.n()), halfband_(a.halfband()), data_(a.n() * (a.halfband() + 1), 0.0) {
  const std::size_t w = halfband_;
  const std::size_t stride = w + 1;
  // Row i, slot t holds L(i, i - w + t).
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > w ? i - w : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      double sum = a(i, j);
      const std::size_t k0 = std::max(j0, j > w ? j - w : 0);
      const std::size_t len = j - k0;
      if (len > 0) {
        const double* li = &data_[i * stride + (k0 + w - i)];
        const double* lj = &data_[j * stride + (k0 + w - j)];
        sum -= simd::dot({li, len}, {lj, len});
      }
      if (j == i) {
        if (!(sum > 0.0)) {
          throw SolverError("band Cholesky breakdown at row " + std::to_string(i) +
                            " (matrix not positive definite)");
        }
        data_[i * stride + w] = std::sqrt(sum);
      } else {
        data_[i * stride + (j + w - i)] = sum / data_[j * stride + w];
      }
    }
  }
}

double BandCholesky::lower(std::size_t i, std::size_t j) const noexcept {
  if (j > i || i - j > halfband_) return 0.0;
  return data_[i * (halfband_ + 1) + (j + halfband_ - i)];
}

void BandCholesky::forward_in_place(std::span<double> b) const {
  const std::size_t w = halfband_;
  const std::size_t stride = w + 1;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > w ? i - w : 0;
    const std::size_t len = i - j0;
    double sum = b[i];
    if (len > 0) sum -= simd::dot({&data_[i * stride + (j0 + w - i)], len}, b.subspan(j0, len));
    b[i] = sum / data_[i * stride + w];
  }
}

void BandCholesky::backward_in_place(std::span<double> y) const {
  const std::size_t w = halfband_;
  const std::size_t stride = w + 1;
  for (std::size_t ii = n_; ii-- > 0;) {
    y[ii] /= data_[ii * stride + w];
    const double xi = y[ii];
    // Scatter column ii of L^T: y[j] -= L(ii, j) x[ii] for j < ii.
    const std::size_t j0 = ii > w ? ii - w : 0;
    const std::size_t len = ii - j0;
    if (len > 0) simd::axpy(-xi, {&data_[ii * stride + (j0 + w - ii)], len}, y.subspan(j0, len));
  }
}

void BandCholesky::solve_in_place(std::span<double> b) const {
  if (b.size() != n_) throw DomainError("BandCholesky::solve dimension mismatch");
  forward_in_place(b);
  backward_in_place(b);
}

}  // namespace nonlocal
