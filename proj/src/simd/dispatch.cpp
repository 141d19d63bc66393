#include <atomic>
#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "bsa/simd/kernels.hpp"

namespace bsa::simd {
namespace {

struct KernelTable {
  Backend backend;
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  void (*scale)(double, double*, std::size_t) noexcept;
  void (*add)(const double*, double*, std::size_t) noexcept;
};

constexpr KernelTable kScalar{Backend::Scalar, &scalar::dot, &scalar::axpy, &scalar::scale, &scalar::add};
constexpr KernelTable kAvx2{Backend::Avx2, &avx2::dot, &avx2::axpy, &avx2::scale, &avx2::add};
constexpr KernelTable kNeon{Backend::Neon, &neon::dot, &neon::axpy, &neon::scale, &neon::add};

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::Avx2: return &kAvx2;
    case Backend::Neon: return &kNeon;
    case Backend::Scalar: break;
  }
  return &kScalar;
}

const KernelTable* initial_table() {
  Backend b = detect_backend();
  if (const char* env = std::getenv("BSA_SIMD")) {
    std::string s(env);
    if (s == "scalar") b = Backend::Scalar;
    else if (s == "avx2" && backend_supported(Backend::Avx2)) b = Backend::Avx2;
    else if (s == "neon" && backend_supported(Backend::Neon)) b = Backend::Neon;
  }
  return table_for(b);
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> t{initial_table()};
  return t;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2::compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon: return neon::compiled();
  }
  return false;
}

Backend detect_backend() {
  if (backend_supported(Backend::Avx2)) return Backend::Avx2;
  if (backend_supported(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend active_backend() { return current().load(std::memory_order_relaxed)->backend; }

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw std::invalid_argument("SIMD backend not supported on this CPU: " + std::string(backend_name(b)));
  }
  current().store(table_for(b), std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return current().load(std::memory_order_relaxed)->dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  current().load(std::memory_order_relaxed)->axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) {
  current().load(std::memory_order_relaxed)->scale(alpha, x.data(), x.size());
}

void add(std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  current().load(std::memory_order_relaxed)->add(x.data(), y.data(), x.size());
}

}  // namespace bsa::simd
