#include "fsp/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fsp/dirichlet_poisson.hpp"
#include "fsp/dst.hpp"
#include "fsp/errors.hpp"
#include "fsp/greens.hpp"
#include "fsp/kernels.hpp"
#include "parallel.hpp"

namespace fsp {

namespace {

// Slice pairs handled per parallel round; fixed so the reduction order never
// depends on the thread count.
constexpr std::size_t kPairsPerRound = 8;

void check_source(const GridFunction& rho) {
  const double peak = rho.max_abs();
  const double edge = rho.max_abs_boundary();
  if (edge > kSupportTolerance * peak) {
    std::ostringstream os;
    os << "density is nonzero on boundary nodes (max " << edge
       << "); the Green's function would be evaluated at zero distance";
    throw SingularityError(os.str());
  }
}

std::array<int, 2> in_face_axes(int dim, int axis) {
  std::array<int, 2> out{-1, -1};
  int slot = 0;
  for (int s = 0; s < dim; ++s)
    if (s != axis) out[slot++] = s;
  return out;
}

BoundaryValues boundary_1d(const GridFunction& rho) {
  const UniformGrid& g = rho.grid();
  BoundaryValues out(g);
  const std::size_t m = g.panels(0);
  const double h = g.mesh(0);
  for (int side = 0; side < 2; ++side) {
    const double x = side == 0 ? g.lower(0) : g.upper(0);
    double sum = 0.0;
    for (std::size_t i = 1; i < m; ++i) sum += green_value(1, std::abs(x - g.coordinate(0, i))) * rho(i);
    out.face(0, side)[0] = sum * h;
  }
  return out;
}

}  // namespace

FaceConvolutionPlan make_face_plan(const UniformGrid& grid, int axis) {
  if (grid.dim() < 2) throw ShapeError("face convolution plans exist for dim 2 and 3");
  if (axis < 0 || axis >= grid.dim()) throw ShapeError("face axis out of range");
  FaceConvolutionPlan plan;
  plan.axis = axis;
  plan.rank = grid.dim() - 1;
  const auto axes = in_face_axes(grid.dim(), axis);
  for (int r = 0; r < plan.rank; ++r) {
    const std::size_t m = grid.panels(axes[r]);
    plan.face[r] = m + 1;
    plan.kernel[r] = 2 * m + 1;
    plan.padded[r] = next_smooth(plan.kernel[r] + plan.face[r] - 1);
    plan.window[r] = m;
  }
  return plan;
}

BoundaryValues boundary_values_naive(const GridFunction& rho) {
  check_source(rho);
  const UniformGrid& g = rho.grid();
  if (g.dim() == 1) return boundary_1d(rho);
  const int dim = g.dim();
  const Extents n = g.extents();
  const double weight = g.cell_volume();

  // Interior sources with nonzero density; zero terms add nothing to the sum.
  std::vector<Point> src;
  std::vector<double> mass;
  for (std::size_t i = 1; i + 1 < n[0]; ++i)
    for (std::size_t j = 1; j + 1 < n[1]; ++j)
      for (std::size_t k = (dim > 2 ? 1 : 0); k < (dim > 2 ? n[2] - 1 : 1); ++k)
        if (rho(i, j, k) != 0.0) {
          src.push_back(g.point({i, j, k}));
          mass.push_back(rho(i, j, k));
        }

  BoundaryValues out(g);
  for (int axis = 0; axis < dim; ++axis) {
    const auto axes = in_face_axes(dim, axis);
    const auto fe = out.face_extents(axis);
    for (int side = 0; side < 2; ++side) {
      auto face = out.face(axis, side);
      for (std::size_t a = 0; a < fe[0]; ++a)
        for (std::size_t b = 0; b < fe[1]; ++b) {
          Index idx{0, 0, 0};
          idx[axis] = side == 0 ? 0 : g.panels(axis);
          idx[axes[0]] = a;
          if (dim == 3) idx[axes[1]] = b;
          const Point x = g.point(idx);
          double sum = 0.0;
          for (std::size_t s = 0; s < src.size(); ++s) {
            double r2 = 0.0;
            for (int d = 0; d < dim; ++d) r2 += (x[d] - src[s][d]) * (x[d] - src[s][d]);
            sum += green_value(dim, std::sqrt(r2)) * mass[s];
          }
          face[a * fe[1] + b] = sum * weight;
        }
    }
  }
  return out;
}

BoundaryValues boundary_values_fast(const GridFunction& rho, unsigned thread_count) {
  if (thread_count == 0) throw Error("thread_count must be positive");
  check_source(rho);
  const UniformGrid& g = rho.grid();
  if (g.dim() == 1) return boundary_1d(rho);

  const int dim = g.dim();
  const auto& ops = kernels::active();
  const Extents n = g.extents();
  const std::array<std::size_t, 3> stride{n[1] * n[2], n[2], 1};
  const auto values = rho.values();
  BoundaryValues out(g);

  for (int axis = 0; axis < dim; ++axis) {
    const FaceConvolutionPlan plan = make_face_plan(g, axis);
    const auto axes = in_face_axes(dim, axis);
    const std::size_t panels = g.panels(axis);
    const double h_normal = g.mesh(axis);

    std::vector<std::size_t> padded(plan.padded.begin(), plan.padded.begin() + plan.rank);
    const PaddedRealTransform fft(padded);
    const std::size_t spec = fft.spectrum_size();

    // Offsets along each in-face axis, -panels .. +panels.
    std::array<std::vector<double>, 2> offsets;
    for (int r = 0; r < plan.rank; ++r) {
      const std::size_t m = g.panels(axes[r]);
      const double h = g.mesh(axes[r]);
      offsets[r].resize(plan.kernel[r]);
      for (std::size_t o = 0; o < plan.kernel[r]; ++o)
        offsets[r][o] = (static_cast<double>(o) - static_cast<double>(m)) * h;
    }
    const MatrixView kernel_shape{{}, plan.rank == 2 ? plan.kernel[0] : 1,
                                  plan.rank == 2 ? plan.kernel[1] : plan.kernel[0]};
    const std::size_t face_rows = plan.rank == 2 ? plan.face[0] : 1;
    const std::size_t face_cols = plan.rank == 2 ? plan.face[1] : plan.face[0];
    const std::size_t slice_size = plan.face[0] * plan.face[1];

    // Slice pairs (p, panels - p), p = 1 .. panels/2; together they cover 1 .. panels-1.
    const std::size_t pairs = panels / 2;

    struct Workspace {
      AlignedVector<double> real;
      std::vector<double> slice_p, slice_q, kernel;
      AlignedVector<std::complex<double>> data_p, data_q, kern_p, kern_q;
    };
    const unsigned workers = std::max(1u, thread_count);
    std::vector<Workspace> work(workers);
    for (auto& w : work) {
      w.real = fft.make_real_buffer();
      w.slice_p.resize(slice_size);
      w.slice_q.resize(slice_size);
      w.data_p = fft.make_spectrum_buffer();
      w.data_q = fft.make_spectrum_buffer();
      w.kern_p = fft.make_spectrum_buffer();
      w.kern_q = fft.make_spectrum_buffer();
    }
    struct Contribution {
      AlignedVector<std::complex<double>> low, high;
      bool low_set = false, high_set = false;
    };
    std::vector<Contribution> round(std::min(kPairsPerRound, pairs));
    for (auto& c : round) {
      c.low = fft.make_spectrum_buffer();
      c.high = fft.make_spectrum_buffer();
    }
    auto acc_low = fft.make_spectrum_buffer();
    auto acc_high = fft.make_spectrum_buffer();

    auto extract = [&](std::size_t p, std::vector<double>& slice) {
      bool nonzero = false;
      const std::size_t base = p * stride[axis];
      const std::size_t sb = stride[axes[0]];
      const std::size_t sc = plan.rank == 2 ? stride[axes[1]] : 0;
      for (std::size_t a = 0; a < plan.face[0]; ++a)
        for (std::size_t b = 0; b < plan.face[1]; ++b) {
          const double v = values[base + a * sb + b * sc];
          slice[a * plan.face[1] + b] = v;
          nonzero = nonzero || v != 0.0;
        }
      return nonzero;
    };
    auto kernel_spectrum = [&](std::size_t distance, Workspace& w, AlignedVector<std::complex<double>>& dst) {
      w.kernel = kernel_plane(dim, static_cast<double>(distance) * h_normal, offsets[0], offsets[1]);
      fft.forward({w.kernel, kernel_shape.rows, kernel_shape.cols}, w.real, dst);
    };

    for (std::size_t first = 0; first < pairs; first += kPairsPerRound) {
      const std::size_t count = std::min(kPairsPerRound, pairs - first);
      detail::parallel_for(count, workers, [&](std::size_t t, unsigned worker) {
        Workspace& w = work[worker];
        Contribution& c = round[t];
        c.low_set = c.high_set = false;
        const std::size_t p = first + t + 1;
        const std::size_t q = panels - p;
        const bool self = p == q;
        const bool has_p = extract(p, w.slice_p);
        const bool has_q = !self && extract(q, w.slice_q);
        if (!has_p && !has_q) return;
        if (has_p) fft.forward({w.slice_p, face_rows, face_cols}, w.real, w.data_p);
        if (has_q) fft.forward({w.slice_q, face_rows, face_cols}, w.real, w.data_q);
        // Slice p lies p panels from the low face and q panels from the high face.
        kernel_spectrum(p, w, w.kern_p);
        if (!self) kernel_spectrum(q, w, w.kern_q);
        if (has_p) {
          ops.complex_multiply(c.low.data(), w.kern_p.data(), w.data_p.data(), spec);
          c.low_set = true;
          if (!self) {
            ops.complex_multiply(c.high.data(), w.kern_q.data(), w.data_p.data(), spec);
            c.high_set = true;
          }
        }
        if (has_q) {
          if (c.low_set)
            ops.complex_multiply_add(c.low.data(), w.kern_q.data(), w.data_q.data(), spec);
          else
            ops.complex_multiply(c.low.data(), w.kern_q.data(), w.data_q.data(), spec);
          if (c.high_set)
            ops.complex_multiply_add(c.high.data(), w.kern_p.data(), w.data_q.data(), spec);
          else
            ops.complex_multiply(c.high.data(), w.kern_p.data(), w.data_q.data(), spec);
          c.low_set = c.high_set = true;
        }
      });
      // Serial reduction in ascending pair order.
      for (std::size_t t = 0; t < count; ++t) {
        const Contribution& c = round[t];
        const bool self = (first + t + 1) * 2 == panels;
        if (c.low_set) {
          ops.add_scaled(reinterpret_cast<double*>(acc_low.data()), reinterpret_cast<const double*>(c.low.data()),
                         1.0, 2 * spec);
          const auto& high = self ? c.low : c.high;
          ops.add_scaled(reinterpret_cast<double*>(acc_high.data()), reinterpret_cast<const double*>(high.data()),
                         1.0, 2 * spec);
        }
      }
    }

    const double scale = g.cell_volume() / static_cast<double>(fft.real_size());
    const std::size_t pcols = plan.rank == 2 ? plan.padded[1] : plan.padded[0];
    auto& real = work[0].real;
    for (int side = 0; side < 2; ++side) {
      auto& acc = side == 0 ? acc_low : acc_high;
      fft.inverse(acc, real);
      auto face = out.face(axis, side);
      for (std::size_t a = 0; a < plan.face[0]; ++a)
        for (std::size_t b = 0; b < plan.face[1]; ++b) {
          const std::size_t row = plan.rank == 2 ? plan.window[0] + a : 0;
          const std::size_t col = plan.rank == 2 ? plan.window[1] + b : plan.window[0] + a;
          face[a * plan.face[1] + b] = real[row * pcols + col] * scale;
        }
    }
  }
  return out;
}

}  // namespace fsp
