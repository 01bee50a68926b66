#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fsp/grid.hpp"

namespace fsp {

namespace detail {
void* aligned_allocate(std::size_t bytes);
void aligned_release(void* p) noexcept;
}  // namespace detail

/// Allocator returning memory aligned for the FFT backend's SIMD code paths.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) { return static_cast<T*>(detail::aligned_allocate(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) noexcept { detail::aligned_release(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

/// Smallest integer >= n whose prime factors are all <= 7.
std::size_t next_smooth(std::size_t n);

/// Sine-series coefficients over interior modes k_s = 1 .. panels(s)-1, x slowest.
struct InteriorModeArray {
  UniformGrid grid;
  AlignedVector<double> coefficients;

  explicit InteriorModeArray(UniformGrid g);
  Extents extents() const { return grid.interior_extents(); }
  double& operator()(std::size_t k0, std::size_t k1 = 1, std::size_t k2 = 1);
  double operator()(std::size_t k0, std::size_t k1 = 1, std::size_t k2 = 1) const;
};

/// Unnormalized multidimensional DST-I, in place, over an interior-sized array:
/// y_k = prod_s 2 sum_j x_j sin(pi (j+1)(k+1) / (n_s+1)). Applying it twice scales by prod 2(n_s+1).
void sine_transform(std::span<double> data, const Extents& interior, int dim);

/// Sine coefficients of f from its interior values, scaled so that
/// beta_k = prod_s (2 / L_s) h_s * sum_i f_i sin(k_s pi (x_i - a_s) / L_s).
InteriorModeArray forward_dst(const GridFunction& f);

/// Sine series of c evaluated at every node; boundary nodes are exactly zero.
GridFunction inverse_dst(const InteriorModeArray& c);

/// Half-open index window [first, first + count).
struct IndexRange {
  std::size_t first = 0;
  std::size_t count = 0;
};

/// Row-major matrix view.
struct MatrixView {
  std::span<const double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// Entries [wanted.first, wanted.first + wanted.count) of the full linear
/// convolution c[n] = sum_q kernel[n - q] data[q], n in [0, K + L - 1).
/// Requires K >= L; computed with FFTs zero-padded to a 7-smooth length >= K + L - 1.
std::vector<double> fast_linear_convolution(std::span<const double> kernel, std::span<const double> data,
                                            IndexRange wanted);

/// Two-dimensional analog; the result is row-major over rows x cols of the windows.
std::vector<double> fast_linear_convolution_2d(const MatrixView& kernel, const MatrixView& data, IndexRange rows,
                                               IndexRange cols);

/// Reusable zero-padded real-to-complex transform of rank 1 or 2.
///
/// Instances share FFT plans through a synchronized cache; `forward` and
/// `inverse` may run concurrently on distinct buffers.
class PaddedRealTransform {
 public:
  /// padded = {P0} (rank 1) or {P0, P1} (rank 2).
  explicit PaddedRealTransform(std::span<const std::size_t> padded);

  std::size_t rank() const { return rank_; }
  std::size_t real_size() const { return real_size_; }
  std::size_t spectrum_size() const { return spectrum_size_; }

  /// Zero-pads src (rows x cols, rows == 1 for rank 1) into `scratch` and transforms into `spectrum`.
  void forward(const MatrixView& src, std::span<double> scratch, std::span<std::complex<double>> spectrum) const;
  /// Unnormalized inverse; `spectrum` is destroyed. `out` holds real_size() values.
  void inverse(std::span<std::complex<double>> spectrum, std::span<double> out) const;

  AlignedVector<double> make_real_buffer() const { return AlignedVector<double>(real_size_); }
  AlignedVector<std::complex<double>> make_spectrum_buffer() const {
    return AlignedVector<std::complex<double>>(spectrum_size_);
  }

 private:
  std::size_t rank_;
  std::array<std::size_t, 2> padded_{1, 1};
  std::size_t real_size_;
  std::size_t spectrum_size_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace fsp
