#include "fsp/dst.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <new>
#include <tuple>

#include "fsp/errors.hpp"

namespace fsp {

namespace detail {

void* aligned_allocate(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void aligned_release(void* p) noexcept { fftw_free(p); }

}  // namespace detail

namespace {

// Plans are created once per shape and never destroyed before exit. FFTW's
// planner is not reentrant, so creation is serialized; execution through the
// new-array interface is thread-safe.
class PlanCache {
 public:
  enum class Kind { dst, r2c, c2r };
  using Key = std::tuple<Kind, int, int, int, int>;

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(Kind kind, int rank, std::array<int, 3> n) {
    const Key key{kind, rank, n[0], n[1], n[2]};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_plan plan = create(kind, rank, n);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  static fftw_plan create(Kind kind, int rank, const std::array<int, 3>& n) {
    std::size_t real = 1;
    for (int r = 0; r < rank; ++r) real *= static_cast<std::size_t>(n[r]);
    const std::size_t complex = real / static_cast<std::size_t>(n[rank - 1]) * (n[rank - 1] / 2 + 1);
    AlignedVector<double> in(std::max<std::size_t>(real, 1));
    switch (kind) {
      case Kind::dst: {
        const fftw_r2r_kind kinds[3] = {FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
        return fftw_plan_r2r(rank, n.data(), in.data(), in.data(), kinds, FFTW_ESTIMATE);
      }
      case Kind::r2c: {
        AlignedVector<std::complex<double>> out(complex);
        return fftw_plan_dft_r2c(rank, n.data(), in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                 FFTW_ESTIMATE);
      }
      case Kind::c2r: {
        AlignedVector<std::complex<double>> spec(complex);
        return fftw_plan_dft_c2r(rank, n.data(), reinterpret_cast<fftw_complex*>(spec.data()), in.data(),
                                 FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
      }
    }
    return nullptr;
  }

  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

void require_aligned(const void* p) {
  if (fftw_alignment_of(const_cast<double*>(static_cast<const double*>(p))) != 0)
    throw Error("transform buffer is not aligned for the FFT backend");
}

}  // namespace

std::size_t next_smooth(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

InteriorModeArray::InteriorModeArray(UniformGrid g) : grid(std::move(g)), coefficients(grid.interior_count(), 0.0) {}

double& InteriorModeArray::operator()(std::size_t k0, std::size_t k1, std::size_t k2) {
  const Extents e = extents();
  return coefficients[((k0 - 1) * e[1] + (k1 - 1)) * e[2] + (k2 - 1)];
}

double InteriorModeArray::operator()(std::size_t k0, std::size_t k1, std::size_t k2) const {
  const Extents e = extents();
  return coefficients[((k0 - 1) * e[1] + (k1 - 1)) * e[2] + (k2 - 1)];
}

void sine_transform(std::span<double> data, const Extents& interior, int dim) {
  if (dim < 1 || dim > kMaxDim) throw ShapeError("sine transform dimension must be 1, 2 or 3");
  std::size_t count = 1;
  std::array<int, 3> n{1, 1, 1};
  for (int s = 0; s < dim; ++s) {
    if (interior[s] < 1) throw ShapeError("sine transform needs at least one interior node per axis");
    n[s] = static_cast<int>(interior[s]);
    count *= interior[s];
  }
  if (data.size() != count) throw ShapeError("sine transform buffer does not match interior extents");
  fftw_plan plan = PlanCache::instance().get(PlanCache::Kind::dst, dim, n);
  if (fftw_alignment_of(data.data()) == 0) {
    fftw_execute_r2r(plan, data.data(), data.data());
  } else {
    AlignedVector<double> tmp(data.begin(), data.end());
    fftw_execute_r2r(plan, tmp.data(), tmp.data());
    std::copy(tmp.begin(), tmp.end(), data.begin());
  }
}

InteriorModeArray forward_dst(const GridFunction& f) {
  const UniformGrid& g = f.grid();
  for (int s = 0; s < g.dim(); ++s)
    if (g.panels(s) < 2) throw ShapeError("forward_dst needs at least 2 panels per axis");
  InteriorModeArray out(g);
  const Extents e = g.interior_extents();
  std::size_t at = 0;
  for (std::size_t i = 0; i < e[0]; ++i)
    for (std::size_t j = 0; j < e[1]; ++j)
      for (std::size_t k = 0; k < e[2]; ++k)
        out.coefficients[at++] = f(i + 1, g.dim() > 1 ? j + 1 : 0, g.dim() > 2 ? k + 1 : 0);
  sine_transform(out.coefficients, e, g.dim());
  double scale = 1.0;
  for (int s = 0; s < g.dim(); ++s) scale /= static_cast<double>(g.panels(s));
  for (double& c : out.coefficients) c *= scale;
  return out;
}

GridFunction inverse_dst(const InteriorModeArray& c) {
  const UniformGrid& g = c.grid;
  if (c.coefficients.size() != g.interior_count()) throw ShapeError("coefficient array does not match grid");
  AlignedVector<double> work(c.coefficients);
  const Extents e = g.interior_extents();
  sine_transform(work, e, g.dim());
  const double scale = 1.0 / static_cast<double>(1u << g.dim());
  GridFunction out(g);
  std::size_t at = 0;
  for (std::size_t i = 0; i < e[0]; ++i)
    for (std::size_t j = 0; j < e[1]; ++j)
      for (std::size_t k = 0; k < e[2]; ++k)
        out(i + 1, g.dim() > 1 ? j + 1 : 0, g.dim() > 2 ? k + 1 : 0) = work[at++] * scale;
  return out;
}

// ---------------------------------------------------------------------------
// Padded real transforms and linear convolution

PaddedRealTransform::PaddedRealTransform(std::span<const std::size_t> padded) : rank_(padded.size()) {
  if (rank_ < 1 || rank_ > 2) throw ShapeError("padded transform rank must be 1 or 2");
  std::array<int, 3> n{1, 1, 1};
  for (std::size_t r = 0; r < rank_; ++r) {
    if (padded[r] < 1) throw ShapeError("padded transform length must be positive");
    padded_[r] = padded[r];
    n[r] = static_cast<int>(padded[r]);
  }
  real_size_ = padded_[0] * padded_[1];
  spectrum_size_ = rank_ == 1 ? padded_[0] / 2 + 1 : padded_[0] * (padded_[1] / 2 + 1);
  forward_plan_ = PlanCache::instance().get(PlanCache::Kind::r2c, static_cast<int>(rank_), n);
  inverse_plan_ = PlanCache::instance().get(PlanCache::Kind::c2r, static_cast<int>(rank_), n);
}

void PaddedRealTransform::forward(const MatrixView& src, std::span<double> scratch,
                                  std::span<std::complex<double>> spectrum) const {
  const std::size_t rows = rank_ == 1 ? 1 : padded_[0];
  const std::size_t cols = rank_ == 1 ? padded_[0] : padded_[1];
  if (src.rows > rows || src.cols > cols || src.values.size() != src.rows * src.cols)
    throw ShapeError("source block does not fit the padded transform");
  if (scratch.size() != real_size_ || spectrum.size() != spectrum_size_)
    throw ShapeError("transform buffers have the wrong size");
  require_aligned(scratch.data());
  require_aligned(spectrum.data());
  std::fill(scratch.begin(), scratch.end(), 0.0);
  for (std::size_t r = 0; r < src.rows; ++r)
    std::copy_n(src.values.data() + r * src.cols, src.cols, scratch.data() + r * cols);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), scratch.data(),
                       reinterpret_cast<fftw_complex*>(spectrum.data()));
}

void PaddedRealTransform::inverse(std::span<std::complex<double>> spectrum, std::span<double> out) const {
  if (out.size() != real_size_ || spectrum.size() != spectrum_size_)
    throw ShapeError("transform buffers have the wrong size");
  require_aligned(out.data());
  require_aligned(spectrum.data());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(spectrum.data()),
                       out.data());
}

namespace {

std::vector<double> convolve(const MatrixView& kernel, const MatrixView& data, IndexRange rows, IndexRange cols,
                             int rank) {
  if (kernel.values.size() != kernel.rows * kernel.cols || data.values.size() != data.rows * data.cols)
    throw ShapeError("convolution operand extents do not match their value arrays");
  if (kernel.rows < data.rows || kernel.cols < data.cols)
    throw ShapeError("convolution kernel must be at least as long as the data on every axis");
  if (data.rows == 0 || data.cols == 0) throw ShapeError("convolution data must be nonempty");
  const std::size_t full_rows = kernel.rows + data.rows - 1;
  const std::size_t full_cols = kernel.cols + data.cols - 1;
  if (rows.first + rows.count > full_rows || cols.first + cols.count > full_cols)
    throw ShapeError("requested convolution window lies outside the full convolution");

  std::vector<std::size_t> padded;
  if (rank == 2) padded.push_back(next_smooth(full_rows));
  padded.push_back(next_smooth(full_cols));
  const PaddedRealTransform fft(padded);
  const std::size_t pcols = padded.back();

  auto scratch = fft.make_real_buffer();
  auto kspec = fft.make_spectrum_buffer();
  auto dspec = fft.make_spectrum_buffer();
  fft.forward(kernel, scratch, kspec);
  fft.forward(data, scratch, dspec);
  for (std::size_t n = 0; n < kspec.size(); ++n) kspec[n] *= dspec[n];
  fft.inverse(kspec, scratch);

  const double norm = 1.0 / static_cast<double>(fft.real_size());
  std::vector<double> out(rows.count * cols.count);
  for (std::size_t r = 0; r < rows.count; ++r)
    for (std::size_t c = 0; c < cols.count; ++c)
      out[r * cols.count + c] = scratch[(rows.first + r) * pcols + cols.first + c] * norm;
  return out;
}

}  // namespace

std::vector<double> fast_linear_convolution(std::span<const double> kernel, std::span<const double> data,
                                            IndexRange wanted) {
  return convolve({kernel, 1, kernel.size()}, {data, 1, data.size()}, {0, 1}, wanted, 1);
}

std::vector<double> fast_linear_convolution_2d(const MatrixView& kernel, const MatrixView& data, IndexRange rows,
                                               IndexRange cols) {
  return convolve(kernel, data, rows, cols, 2);
}

}  // namespace fsp
