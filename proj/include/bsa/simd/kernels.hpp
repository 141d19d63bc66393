#pragma once

// Dense double-precision vector kernels used by the model's inner loops.
//
// Every kernel has a scalar reference implementation. Vector variants (AVX2+FMA
// on x86-64, NEON on AArch64) are compiled into separate translation units and
// selected once at runtime from CPU feature detection. The BSA_SIMD environment
// variable ("scalar", "avx2", "neon") overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace bsa::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);
bool backend_supported(Backend b);

/// Backend currently used by the dispatching entry points below.
Backend active_backend();

/// Switches the dispatch table. Throws std::invalid_argument if the CPU
/// cannot run `b`. Not thread-safe with respect to concurrent kernel calls.
void set_backend(Backend b);

/// Best backend for this CPU, ignoring the environment override.
Backend detect_backend();

double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// x *= alpha
void scale(double alpha, std::span<double> x);
/// y += x
void add(std::span<const double> x, std::span<double> y);

// Raw per-backend entry points. Exposed for equivalence tests and benchmarks.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
void add(const double* x, double* y, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
bool compiled() noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
void add(const double* x, double* y, std::size_t n) noexcept;
}  // namespace avx2

namespace neon {
bool compiled() noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
void add(const double* x, double* y, std::size_t n) noexcept;
}  // namespace neon

}  // namespace bsa::simd
