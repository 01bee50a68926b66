#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the transforms and stencils.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant chosen at runtime. Both variants perform the same operations in the
// same order without fused multiply-add, so their results are bitwise equal.

namespace fsp::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  /// out[t] = scale * ((in[t - stride] + in[t + stride]) - (in[t] + in[t])), t in [0, n)
  void (*second_difference)(const double* in, double* out, std::size_t n, std::ptrdiff_t stride, double scale);
  /// out[t] = a[t] * b[t]
  void (*complex_multiply)(std::complex<double>* out, const std::complex<double>* a,
                           const std::complex<double>* b, std::size_t n);
  /// acc[t] = acc[t] + a[t] * b[t]
  void (*complex_multiply_add)(std::complex<double>* acc, const std::complex<double>* a,
                               const std::complex<double>* b, std::size_t n);
  /// x[t] = x[t] * factor[t]
  void (*multiply)(double* x, const double* factor, std::size_t n);
  /// acc[t] = acc[t] + alpha * x[t]
  void (*add_scaled)(double* acc, const double* x, double alpha, std::size_t n);
};

/// Table selected for this process: AVX2 when the CPU supports it, unless the
/// environment variable FSP_FORCE_SCALAR is set to a non-empty value.
const KernelTable& active();

bool supported(Isa isa);
/// Throws fsp::Error when the ISA is not compiled in or not supported by the CPU.
const KernelTable& table(Isa isa);

std::string_view name(Isa isa);

namespace detail {
extern const KernelTable scalar_table;
#if defined(FSP_HAVE_AVX2_KERNELS)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace fsp::kernels
