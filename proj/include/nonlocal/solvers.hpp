#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nonlocal/assembly.hpp"
#include "nonlocal/band_matrix.hpp"

namespace nonlocal {

enum class LinearMethod { cholesky, cg };

/// Solves A u = F for the stiffness A of `sys`. The result satisfies
/// ||A u - F|| <= 1e-10 ||F||; CG is Jacobi preconditioned and gives up after
/// 10 n iterations (SolverError).
Vector solve_dirichlet(const AssembledSystem& sys, std::span<const double> load,
                       LinearMethod method);
Vector solve_dirichlet(const SymBandMatrix& a, std::span<const double> load, LinearMethod method);

/// Smallest eigenpairs of A v = lambda M v.
struct EigenSet {
  Vector values;               // ascending
  std::vector<Vector> vectors; // M-orthonormal, first non-negligible entry positive
  SymBandMatrix gram;          // the M the vectors are orthonormal in
};

/// Dense generalized symmetric eigensolve: M = L L^T (band Cholesky),
/// C = L^{-1} A L^{-T}, Householder tridiagonalization, implicit QL, and
/// back-substitution v = L^{-T} y. Returns the k smallest pairs and verifies
/// the residual and orthonormality bounds (InvariantViolation otherwise).
EigenSet solve_eigen(const AssembledSystem& sys, std::size_t k);
EigenSet solve_eigen(const SymBandMatrix& a, const SymBandMatrix& m, std::size_t k);

/// All eigenvalues (ascending) and orthonormal eigenvectors of a dense
/// symmetric matrix; row j of `vectors` belongs to values[j].
struct SymmetricEigen {
  Vector values;
  DenseMatrix vectors;
};
SymmetricEigen symmetric_eigen(DenseMatrix a);

/// v^T A v / v^T M v.
double rayleigh_quotient(const AssembledSystem& sys, std::span<const double> v);
double rayleigh_quotient(const SymBandMatrix& a, const SymBandMatrix& m, std::span<const double> v);

struct EigenDefects {
  double max_residual = 0.0;        // max_j ||A v_j - lambda_j M v_j|| / ||A v_j||
  double orthonormality = 0.0;      // max |V^T M V - I|
};
EigenDefects eigen_defects(const SymBandMatrix& a, const EigenSet& eig);

/// Flips v so that its first entry with magnitude above 1e-12 ||v||_inf is positive.
void fix_sign(std::span<double> v);

}  // namespace nonlocal
