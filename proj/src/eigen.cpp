#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/simd.hpp"
#include "nonlocal/solvers.hpp"

namespace nonlocal {

namespace {

// Householder reduction to tridiagonal form with accumulation of the
// orthogonal transform (EISPACK tred2 ordering). `w` holds the transpose of
// the working matrix so that every inner loop runs over a contiguous row.
// On return d is the diagonal, e[1..n) the subdiagonal, and row j of w the
// j-th column of the accumulated transform.
void tridiagonalize(DenseMatrix& w, Vector& d, Vector& e) {
  const std::size_t n = w.n();
  auto v = [&](std::size_t row, std::size_t col) -> double& { return w(col, row); };

  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      std::fill(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(i), 0.0);

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        const std::size_t len = i - (j + 1);
        if (len > 0) {
          const std::span<const double> col = w.row(j).subspan(j + 1, len);
          g += simd::dot(col, std::span<const double>(d).subspan(j + 1, len));
          simd::axpy(f, col, std::span<double>(e).subspan(j + 1, len));
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        const std::size_t len = i - j;
        const std::span<double> col = w.row(j).subspan(j, len);
        simd::axpy(-f, std::span<const double>(e).subspan(j, len), col);
        simd::axpy(-g, std::span<const double>(d).subspan(j, len), col);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    const std::size_t len = i + 1;
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      const std::span<const double> next = w.row(i + 1).subspan(0, len);
      for (std::size_t j = 0; j <= i; ++j) {
        const double g = simd::dot(next, w.row(j).subspan(0, len));
        simd::axpy(-g, std::span<const double>(d).subspan(0, len), w.row(j).subspan(0, len));
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e), applying the rotations to the rows
// of w (EISPACK tql2 ordering).
void tridiagonal_ql(Vector& d, Vector& e, DenseMatrix& w) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIterations = 60;

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxIterations) {
          throw SolverError("implicit QL failed to converge for eigenvalue " + std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          std::span<double> lo = w.row(ii);
          std::span<double> hi = w.row(ii + 1);
          for (std::size_t k = 0; k < n; ++k) {
            const double t = hi[k];
            hi[k] = s * lo[k] + c * t;
            lo[k] = c * lo[k] - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(DenseMatrix a) {
  const std::size_t n = a.n();
  if (n == 0) return {};
  // Work on the transpose; a is symmetric so that is a itself.
  Vector d(n, 0.0);
  Vector e(n, 0.0);
  tridiagonalize(a, d, e);
  tridiagonal_ql(d, e, a);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  SymmetricEigen out{Vector(n), DenseMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    const auto src = a.row(order[j]);
    std::copy(src.begin(), src.end(), out.vectors.row(j).begin());
  }
  return out;
}

void fix_sign(std::span<double> v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  if (vmax == 0.0) return;
  for (double x : v) {
    if (std::abs(x) > 1e-12 * vmax) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

EigenSet solve_eigen(const SymBandMatrix& a, const SymBandMatrix& m, std::size_t k) {
  const std::size_t n = a.n();
  if (m.n() != n) throw DomainError("solve_eigen: stiffness and mass sizes differ");
  if (k < 1 || k > n) {
    throw ConfigError("solve_eigen: requested " + std::to_string(k) + " eigenpairs of a " +
                      std::to_string(n) + "-dimensional problem");
  }
  const BandCholesky chol(m);

  // Rows of (L^{-1} A)^T, then transpose, then rows of C = L^{-1} A L^{-T}.
  DenseMatrix work = a.to_dense();
  for (std::size_t r = 0; r < n; ++r) chol.forward_in_place(work.row(r));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) std::swap(work(r, c), work(c, r));
  }
  for (std::size_t r = 0; r < n; ++r) chol.forward_in_place(work.row(r));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      const double avg = 0.5 * (work(r, c) + work(c, r));
      work(r, c) = avg;
      work(c, r) = avg;
    }
  }

  SymmetricEigen reduced = symmetric_eigen(std::move(work));
  EigenSet out;
  out.gram = m;
  out.values.assign(reduced.values.begin(), reduced.values.begin() + static_cast<std::ptrdiff_t>(k));
  out.vectors.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto y = reduced.vectors.row(j);
    Vector v(y.begin(), y.end());
    chol.backward_in_place(v);
    fix_sign(v);
    out.vectors.push_back(std::move(v));
  }

  const EigenDefects defects = eigen_defects(a, out);
  if (defects.max_residual > 1e-8 || defects.orthonormality > 1e-8) {
    throw InvariantViolation("eigenpairs fail verification: residual " +
                             std::to_string(defects.max_residual) + ", orthonormality defect " +
                             std::to_string(defects.orthonormality));
  }
  return out;
}

EigenSet solve_eigen(const AssembledSystem& sys, std::size_t k) {
  return solve_eigen(sys.stiffness, sys.mass, k);
}

EigenDefects eigen_defects(const SymBandMatrix& a, const EigenSet& eig) {
  EigenDefects out;
  const std::size_t k = eig.values.size();
  std::vector<Vector> mv(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector av = a.multiply(eig.vectors[j]);
    mv[j] = eig.gram.multiply(eig.vectors[j]);
    double res = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
      const double r = av[i] - eig.values[j] * mv[j][i];
      res += r * r;
      norm += av[i] * av[i];
    }
    out.max_residual = std::max(out.max_residual, std::sqrt(res) / std::sqrt(norm));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      out.orthonormality =
          std::max(out.orthonormality, std::abs(simd::dot(eig.vectors[i], mv[j]) - target));
    }
  }
  return out;
}

}  // namespace nonlocal
