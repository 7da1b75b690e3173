#include <atomic>
#include <cstdlib>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/simd.hpp"

namespace nonlocal::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(NONLOCAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (const char* env = std::getenv("NSOLVE_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::scalar;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa) noexcept { return isa == Isa::scalar || cpu_has_avx2(); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw DomainError("instruction set '" + std::string(isa_name(isa)) +
                      "' is not available on this build/CPU");
  }
  current().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> x, std::span<const double> y) {
#if defined(NONLOCAL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::dot(x, y);
#endif
  return scalar::dot(x, y);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
#if defined(NONLOCAL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::axpy(alpha, x, y);
#endif
  scalar::axpy(alpha, x, y);
}

void band_symv(std::size_t n, std::size_t halfband, std::span<const double> packed,
               std::span<const double> x, std::span<double> y) {
#if defined(NONLOCAL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::band_symv(n, halfband, packed, x, y);
#endif
  scalar::band_symv(n, halfband, packed, x, y);
}

}  // namespace nonlocal::simd
