#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Inner-loop kernels with a scalar reference implementation and, on x86-64,
// an AVX2/FMA variant. The variant is chosen once per process from CPUID;
// NSOLVE_SIMD=scalar forces the reference path.
namespace nonlocal::simd {

enum class Isa { scalar, avx2 };

Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;
/// True when the AVX2 variant was compiled in and the CPU supports it.
bool isa_available(Isa isa) noexcept;
/// Overrides the runtime choice. Throws DomainError if `isa` is unavailable.
void set_isa(Isa isa);

double dot(std::span<const double> x, std::span<const double> y);
/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// y = A x for a symmetric band matrix stored as `n` packed rows of
/// (halfband + 1) entries (diagonal first, then the superdiagonals).
void band_symv(std::size_t n, std::size_t halfband, std::span<const double> packed,
               std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void band_symv(std::size_t n, std::size_t halfband, std::span<const double> packed,
               std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(NONLOCAL_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void band_symv(std::size_t n, std::size_t halfband, std::span<const double> packed,
               std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace nonlocal::simd
