#include "fsp/kernels.hpp"

namespace fsp::kernels {

namespace {

void second_difference(const double* in, double* out, std::size_t n, std::ptrdiff_t stride, double scale) {
  for (std::size_t t = 0; t < n; ++t) {
    const double* p = in + t;
    out[t] = scale * ((p[-stride] + p[stride]) - (p[0] + p[0]));
  }
}

void complex_multiply(std::complex<double>* out, const std::complex<double>* a, const std::complex<double>* b,
                      std::size_t n) {
  const double* x = reinterpret_cast<const double*>(a);
  const double* y = reinterpret_cast<const double*>(b);
  double* z = reinterpret_cast<double*>(out);
  for (std::size_t t = 0; t < n; ++t) {
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
  for (std::size_t t = 0; t < n; ++t) {
    const double ar = x[2 * t], ai = x[2 * t + 1];
    const double br = y[2 * t], bi = y[2 * t + 1];
    z[2 * t] = z[2 * t] + (ar * br - ai * bi);
    z[2 * t + 1] = z[2 * t + 1] + (ai * br + ar * bi);
  }
}

void multiply(double* x, const double* factor, std::size_t n) {
  for (std::size_t t = 0; t < n; ++t) x[t] = x[t] * factor[t];
}

void add_scaled(double* acc, const double* x, double alpha, std::size_t n) {
  for (std::size_t t = 0; t < n; ++t) acc[t] = acc[t] + alpha * x[t];
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, second_difference, complex_multiply, complex_multiply_add, multiply,
                               add_scaled};
}

}  // namespace fsp::kernels
