#include <immintrin.h>

#include "fsp/kernels.hpp"

namespace fsp::kernels {

namespace {

void second_difference(const double* in, double* out, std::size_t n, std::ptrdiff_t stride, double scale) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    const double* p = in + t;
    const __m256d lo = _mm256_loadu_pd(p - stride);
    const __m256d hi = _mm256_loadu_pd(p + stride);
    const __m256d mid = _mm256_loadu_pd(p);
    const __m256d d = _mm256_sub_pd(_mm256_add_pd(lo, hi), _mm256_add_pd(mid, mid));
    _mm256_storeu_pd(out + t, _mm256_mul_pd(s, d));
  }
  for (; t < n; ++t) {
    const double* p = in + t;
    out[t] = scale * ((p[-stride] + p[stride]) - (p[0] + p[0]));
  }
}

// Two complex numbers per register: [re0 im0 re1 im1].
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  // [ar*br, ai*br] -+ [ai*bi, ar*bi]
  return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_swap, b_im));
}

void complex_multiply(std::complex<double>* out, const std::complex<double>* a, const std::complex<double>* b,
                      std::size_t n) {
  const double* x = reinterpret_cast<const double*>(a);
  const double* y = reinterpret_cast<const double*>(b);
  double* z = reinterpret_cast<double*>(out);
  std::size_t t = 0;
  for (; t + 2 <= n; t += 2)
    _mm256_storeu_pd(z + 2 * t, cmul(_mm256_loadu_pd(x + 2 * t), _mm256_loadu_pd(y + 2 * t)));
  for (; t < n; ++t) {
    const double ar = x[2 * t], ai = x[2 * t + 1];
    const double br = y[2 * t], bi = y[2 * t + 1];
    z[2 * t] = ar * br - ai * bi;
    z[2 * t + 1] = ai * br + ar * bi;
  }
}

void complex_multiply_add(std::complex<double>* acc, const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n) {
  const double* x = reinterpret_cast<const double*>(a);
  const double* y = reinterpret_cast<const double*>(b);
  double* z = reinterpret_cast<double*>(acc);
  std::size_t t = 0;
  for (; t + 2 <= n; t += 2) {
    const __m256d prod = cmul(_mm256_loadu_pd(x + 2 * t), _mm256_loadu_pd(y + 2 * t));
    _mm256_storeu_pd(z + 2 * t, _mm256_add_pd(_mm256_loadu_pd(z + 2 * t), prod));
  }
  for (; t < n; ++t) {
    const double ar = x[2 * t], ai = x[2 * t + 1];
    const double br = y[2 * t], bi = y[2 * t + 1];
    z[2 * t] = z[2 * t] + (ar * br - ai * bi);
    z[2 * t + 1] = z[2 * t + 1] + (ai * br + ar * bi);
  }
}

void multiply(double* x, const double* factor, std::size_t n) {
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4)
    _mm256_storeu_pd(x + t, _mm256_mul_pd(_mm256_loadu_pd(x + t), _mm256_loadu_pd(factor + t)));
  for (; t < n; ++t) x[t] = x[t] * factor[t];
}

void add_scaled(double* acc, const double* x, double alpha, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4)
    _mm256_storeu_pd(acc + t, _mm256_add_pd(_mm256_loadu_pd(acc + t), _mm256_mul_pd(a, _mm256_loadu_pd(x + t))));
  for (; t < n; ++t) acc[t] = acc[t] + alpha * x[t];
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::avx2, second_difference, complex_multiply, complex_multiply_add, multiply,
                             add_scaled};
}

}  // namespace fsp::kernels
