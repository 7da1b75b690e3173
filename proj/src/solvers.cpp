#include "nonlocal/solvers.hpp"

#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/simd.hpp"

namespace nonlocal {

namespace {

double norm2(std::span<const double> v) { return std::sqrt(simd::dot(v, v)); }

double residual_norm(const SymBandMatrix& a, std::span<const double> u, std::span<const double> f,
                     Vector& r) {
  a.multiply(u, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];
  return norm2(r);
}

Vector solve_cholesky(const SymBandMatrix& a, std::span<const double> load, double target) {
  const BandCholesky chol(a);
  Vector u(load.begin(), load.end());
  chol.solve_in_place(u);
  Vector r(u.size());
  // One step of iterative refinement if the direct solve is short of target.
  if (residual_norm(a, u, load, r) > target) {
    chol.solve_in_place(r);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += r[i];
  }
  return u;
}

Vector solve_cg(const SymBandMatrix& a, std::span<const double> load, double target) {
  const std::size_t n = a.n();
  const Vector diag = a.diagonal();
  for (double d : diag) {
    if (!(d > 0.0)) throw SolverError("CG: non-positive diagonal entry in stiffness");
  }
  Vector x(n, 0.0);
  Vector r(load.begin(), load.end());
  Vector z(n);
  Vector p(n);
  Vector ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = simd::dot(r, z);
  // Iterate a little past the target so the recomputed residual clears it.
  const double inner_target = 0.05 * target;
  const std::size_t max_iter = 10 * n;
  for (std::size_t it = 0; it < max_iter; ++it) {
    a.multiply(p, ap);
    const double alpha = rz / simd::dot(p, ap);
    simd::axpy(alpha, p, x);
    simd::axpy(-alpha, ap, r);
    if (norm2(r) <= inner_target) return x;
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_next = simd::dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverError("CG did not converge in " + std::to_string(max_iter) + " iterations");
}

}  // namespace

Vector solve_dirichlet(const SymBandMatrix& a, std::span<const double> load, LinearMethod method) {
  if (load.size() != a.n()) throw DomainError("solve_dirichlet: load size does not match system");
  const double fnorm = norm2(load);
  if (fnorm == 0.0) return Vector(a.n(), 0.0);
  const double target = 1e-10 * fnorm;
  Vector u = method == LinearMethod::cholesky ? solve_cholesky(a, load, target)
                                              : solve_cg(a, load, target);
  Vector r(u.size());
  const double res = residual_norm(a, u, load, r);
  if (res > target) {
    throw SolverError("linear solve residual " + std::to_string(res / fnorm) +
                      " exceeds 1e-10 relative");
  }
  return u;
}

Vector solve_dirichlet(const AssembledSystem& sys, std::span<const double> load,
                       LinearMethod method) {
  return solve_dirichlet(sys.stiffness, load, method);
}

double rayleigh_quotient(const SymBandMatrix& a, const SymBandMatrix& m, std::span<const double> v) {
  const double denom = m.quadratic_form(v);
  if (!(denom > 0.0)) throw DomainError("rayleigh_quotient of the zero vector");
  return a.quadratic_form(v) / denom;
}

double rayleigh_quotient(const AssembledSystem& sys, std::span<const double> v) {
  return rayleigh_quotient(sys.stiffness, sys.mass, v);
}

}  // namespace nonlocal
