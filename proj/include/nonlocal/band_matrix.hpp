#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nonlocal {

using Vector = std::vector<double>;

/// Row-major dense square matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t n() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Symmetric band matrix. Row i stores (halfband + 1) values: the diagonal
/// entry followed by A(i, i+1) .. A(i, i+halfband). Slots that fall past the
/// last column are kept at zero.
class SymBandMatrix {
 public:
  SymBandMatrix() = default;
  SymBandMatrix(std::size_t n, std::size_t halfband);

  std::size_t n() const noexcept { return n_; }
  std::size_t halfband() const noexcept { return halfband_; }

  /// Entry (i, j); zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept;
  /// Sets (i, j) and, implicitly, (j, i). |i - j| must not exceed halfband.
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> packed() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * (halfband_ + 1), halfband_ + 1};
  }

  Vector multiply(std::span<const double> x) const;
  void multiply(std::span<const double> x, std::span<double> y) const;
  double quadratic_form(std::span<const double> x) const;
  double bilinear_form(std::span<const double> x, std::span<const double> y) const;

  SymBandMatrix scaled(double factor) const;
  /// this + factor * other. Band widths may differ.
  SymBandMatrix plus_scaled(const SymBandMatrix& other, double factor) const;
  DenseMatrix to_dense() const;
  Vector diagonal() const;

  friend bool operator==(const SymBandMatrix&, const SymBandMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t halfband_ = 0;
  std::vector<double> data_;
};

/// Lower-triangular band Cholesky factor L of an SPD band matrix, A = L L^T.
/// Stored by rows: row i holds L(i, i-w) .. L(i, i).
class BandCholesky {
 public:
  /// Throws SolverError if a pivot is not positive.
  explicit BandCholesky(const SymBandMatrix& a);

  std::size_t n() const noexcept { return n_; }
  std::size_t halfband() const noexcept { return halfband_; }
  double lower(std::size_t i, std::size_t j) const noexcept;

  /// Solves A x = b in place.
  void solve_in_place(std::span<double> b) const;
  /// L y = b in place.
  void forward_in_place(std::span<double> b) const;
  /// L^T x = y in place.
  void backward_in_place(std::span<double> y) const;

 private:
  std::size_t n_;
  std::size_t halfband_;
  std::vector<double> data_;  // (halfband + 1) per row, diagonal last
};

}  // namespace nonlocal
