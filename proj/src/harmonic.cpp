#include "fsp/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fsp/errors.hpp"
#include "fsp/kernels.hpp"

namespace fsp {

namespace {

void require_panels(const UniformGrid& g, std::size_t minimum, const char* who) {
  for (int s = 0; s < g.dim(); ++s)
    if (g.panels(s) < minimum) {
      std::ostringstream os;
      os << who << " needs at least " << minimum << " panels per axis (axis " << s << " has " << g.panels(s) << ")";
      throw ShapeError(os.str());
    }
}

double pair_weight(const UniformGrid& g, int r, int s) {
  const double hr = g.mesh(r), hs = g.mesh(s);
  return (hr * hr + hs * hs) / 12.0;
}

std::vector<double> interior_of(const GridFunction& f) {
  const UniformGrid& g = f.grid();
  const Extents e = g.interior_extents();
  const int dim = g.dim();
  std::vector<double> out(g.interior_count());
  std::size_t at = 0;
  for (std::size_t i = 0; i < e[0]; ++i)
    for (std::size_t j = 0; j < e[1]; ++j)
      for (std::size_t k = 0; k < e[2]; ++k) out[at++] = f(i + 1, dim > 1 ? j + 1 : 0, dim > 2 ? k + 1 : 0);
  return out;
}

// Boundary nodes from g, interior nodes from an interior-sized array.
GridFunction assemble(const BoundaryValues& g, std::span<const double> interior) {
  GridFunction out = g.to_grid_function();
  const UniformGrid& grid = g.grid();
  const Extents e = grid.interior_extents();
  const int dim = grid.dim();
  std::size_t at = 0;
  for (std::size_t i = 0; i < e[0]; ++i)
    for (std::size_t j = 0; j < e[1]; ++j)
      for (std::size_t k = 0; k < e[2]; ++k) out(i + 1, dim > 1 ? j + 1 : 0, dim > 2 ? k + 1 : 0) = interior[at++];
  return out;
}

}  // namespace

double second_difference_eigenvalue(std::size_t k, std::size_t panels, double h) {
  // 2cos(t) - 2 == -4 sin^2(t/2), better conditioned for small t.
  const double half = std::sin(static_cast<double>(k) * std::numbers::pi / (2.0 * static_cast<double>(panels)));
  return -4.0 * half * half / (h * h);
}

// ---------------------------------------------------------------------------

CompactOperatorSymbol::CompactOperatorSymbol(const UniformGrid& grid)
    : grid_(grid), values_(grid.interior_count()), scaled_inverse_(grid.interior_count()) {
  if (grid.dim() < 2) throw ShapeError("compact operator symbol is defined for dim 2 and 3");
  const Extents e = grid.interior_extents();
  const int dim = grid.dim();
  std::array<std::vector<double>, kMaxDim> lambda;
  for (int s = 0; s < kMaxDim; ++s) {
    lambda[s].assign(e[s], 0.0);
    if (s < dim)
      for (std::size_t k = 0; k < e[s]; ++k)
        lambda[s][k] = second_difference_eigenvalue(k + 1, grid.panels(s), grid.mesh(s));
  }
  const double c01 = pair_weight(grid, 0, 1);
  const double c02 = dim > 2 ? pair_weight(grid, 0, 2) : 0.0;
  const double c12 = dim > 2 ? pair_weight(grid, 1, 2) : 0.0;
  double norm = 1.0;
  for (int s = 0; s < dim; ++s) norm *= 2.0 * static_cast<double>(grid.panels(s));
  std::size_t at = 0;
  for (std::size_t i = 0; i < e[0]; ++i)
    for (std::size_t j = 0; j < e[1]; ++j)
      for (std::size_t k = 0; k < e[2]; ++k) {
        const double lx = lambda[0][i], ly = lambda[1][j], lz = lambda[2][k];
        const double v = (lx + ly + lz) + c01 * lx * ly + c02 * lx * lz + c12 * ly * lz;
        if (v == 0.0 || !std::isfinite(v)) throw ShapeError("compact operator is singular on this grid");
        values_[at] = v;
        scaled_inverse_[at] = 1.0 / (v * norm);
        ++at;
      }
}

double CompactOperatorSymbol::value(std::size_t k0, std::size_t k1, std::size_t k2) const {
  const Extents e = grid_.interior_extents();
  return values_[((k0 - 1) * e[1] + (k1 - 1)) * e[2] + (k2 - 1)];
}

void CompactOperatorSymbol::solve_in_place(std::span<double> interior) const {
  if (interior.size() != values_.size()) throw ShapeError("interior array does not match operator grid");
  AlignedVector<double> work(interior.begin(), interior.end());
  const Extents e = grid_.interior_extents();
  sine_transform(work, e, grid_.dim());
  kernels::active().multiply(work.data(), scaled_inverse_.data(), work.size());
  sine_transform(work, e, grid_.dim());
  std::copy(work.begin(), work.end(), interior.begin());
}

// ---------------------------------------------------------------------------

StencilWorkspace::StencilWorkspace(const UniformGrid& grid) : grid_(grid) {
  single_.assign(grid.dim(), std::vector<double>(grid.node_count()));
  pair_.assign(grid.node_count(), 0.0);
}

void StencilWorkspace::second_difference(std::span<const double> in, std::span<double> out, int axis) const {
  const std::size_t total = grid_.node_count();
  if (in.size() != total || out.size() != total) throw ShapeError("stencil buffers do not match grid");
  const Extents n = grid_.extents();
  std::size_t stride = 1;
  for (int s = axis + 1; s < kMaxDim; ++s) stride *= n[s];
  const std::size_t block = stride * n[axis];
  const std::size_t outer = total / block;
  const double scale = 1.0 / (grid_.mesh(axis) * grid_.mesh(axis));
  const auto& ops = kernels::active();
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * block;
    ops.second_difference(in.data() + base + stride, out.data() + base + stride, (n[axis] - 2) * stride,
                          static_cast<std::ptrdiff_t>(stride), scale);
    std::fill_n(out.data() + base, stride, 0.0);
    std::fill_n(out.data() + base + (n[axis] - 1) * stride, stride, 0.0);
  }
}

GridFunction StencilWorkspace::apply_compact(const GridFunction& u) {
  if (!(u.grid() == grid_)) throw ShapeError("grid function does not match stencil workspace");
  const int dim = grid_.dim();
  for (int s = 0; s < dim; ++s) second_difference(u.values(), single_[s], s);
  GridFunction out(grid_);
  auto acc = out.values();
  const auto& ops = kernels::active();
  for (int s = 0; s < dim; ++s) ops.add_scaled(acc.data(), single_[s].data(), 1.0, acc.size());
  for (int r = 0; r < dim; ++r)
    for (int s = r + 1; s < dim; ++s) {
      second_difference(single_[s], pair_, r);
      ops.add_scaled(acc.data(), pair_.data(), pair_weight(grid_, r, s), acc.size());
    }
  const Extents n = grid_.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k)
        if (grid_.is_boundary({i, j, k})) out(i, j, k) = 0.0;
  return out;
}

GridFunction apply_compact_operator(const GridFunction& u) {
  if (u.grid().dim() < 2) throw ShapeError("compact operator is defined for dim 2 and 3");
  StencilWorkspace ws(u.grid());
  return ws.apply_compact(u);
}

GridFunction transfer_boundary_to_rhs(const BoundaryValues& g) {
  GridFunction lifted = apply_compact_operator(g.to_grid_function());
  for (double& v : lifted.values()) v = -v;
  return lifted;
}

GridFunction solve_harmonic_4th(const BoundaryValues& g) {
  const UniformGrid& grid = g.grid();
  if (grid.dim() < 2) throw ShapeError("solve_harmonic_4th is for dim 2 and 3; use solve_harmonic_1d");
  require_panels(grid, 4, "fourth-order harmonic solve");
  g.check_consistency();
  const CompactOperatorSymbol symbol(grid);
  std::vector<double> rhs = interior_of(transfer_boundary_to_rhs(g));
  symbol.solve_in_place(rhs);
  return assemble(g, rhs);
}

GridFunction sixth_order_rhs(const GridFunction& u1) {
  const UniformGrid& grid = u1.grid();
  const int dim = grid.dim();
  if (dim < 2) throw ShapeError("sixth-order correction is defined for dim 2 and 3");
  require_panels(grid, kSixthOrderMinPanels, "sixth-order correction");

  StencilWorkspace ws(grid);
  const std::size_t total = grid.node_count();
  std::vector<double> ds(total), drs(total), term(total);
  GridFunction rhs(grid);
  auto acc = rhs.values();
  const auto& ops = kernels::active();
  for (int r = 0; r < dim; ++r)
    for (int s = r + 1; s < dim; ++s) {
      const double hr2 = grid.mesh(r) * grid.mesh(r);
      const double hs2 = grid.mesh(s) * grid.mesh(s);
      ws.second_difference(u1.values(), ds, s);
      ws.second_difference(ds, drs, r);
      ws.second_difference(drs, term, r);
      ops.add_scaled(acc.data(), term.data(), hr2 * hr2 / 240.0 + hr2 * hs2 / 144.0, total);
      ws.second_difference(drs, term, s);
      ops.add_scaled(acc.data(), term.data(), hs2 * hs2 / 240.0 + hr2 * hs2 / 144.0, total);
    }

  // Keep direct values only where every index is in [2, panels-2].
  const Extents n = grid.extents();
  auto layer = [&](const Index& idx, int s) {
    return idx[s] == 1 || idx[s] == grid.panels(s) - 1;
  };
  auto depth_ok = [&](const Index& idx) {
    for (int s = 0; s < dim; ++s)
      if (idx[s] < 2 || idx[s] + 2 > grid.panels(s)) return false;
    return true;
  };
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k)
        if (!depth_ok({i, j, k})) rhs(i, j, k) = 0.0;

  // Fill the first interior layer: faces, then edges, then corners.
  for (int ties = 1; ties <= dim; ++ties)
    for (std::size_t i = 1; i + 1 < n[0]; ++i)
      for (std::size_t j = (dim > 1 ? 1 : 0); j < (dim > 1 ? n[1] - 1 : 1); ++j)
        for (std::size_t k = (dim > 2 ? 1 : 0); k < (dim > 2 ? n[2] - 1 : 1); ++k) {
          const Index idx{i, j, k};
          int count = 0;
          for (int s = 0; s < dim; ++s) count += layer(idx, s) ? 1 : 0;
          if (count != ties) continue;
          double sum = 0.0;
          for (int s = 0; s < dim; ++s) {
            if (!layer(idx, s)) continue;
            const std::ptrdiff_t dir = idx[s] == 1 ? 1 : -1;
            auto at = [&](std::ptrdiff_t step) {
              Index nb = idx;
              nb[s] = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx[s]) + step * dir);
              return rhs[nb];
            };
            sum += 4.0 * at(1) - 6.0 * at(2) + 4.0 * at(3) - at(4);
          }
          rhs[idx] = sum / static_cast<double>(ties);
        }
  return rhs;
}

GridFunction solve_harmonic_6th(const BoundaryValues& g) {
  const UniformGrid& grid = g.grid();
  if (grid.dim() < 2) throw ShapeError("solve_harmonic_6th is for dim 2 and 3; use solve_harmonic_1d");
  require_panels(grid, kSixthOrderMinPanels, "sixth-order harmonic solve");
  g.check_consistency();
  const CompactOperatorSymbol symbol(grid);
  const GridFunction transfer = transfer_boundary_to_rhs(g);
  const std::vector<double> lifted = interior_of(transfer);

  std::vector<double> first = lifted;
  symbol.solve_in_place(first);
  const GridFunction u1 = assemble(g, first);

  std::vector<double> second = interior_of(sixth_order_rhs(u1));
  kernels::active().add_scaled(second.data(), lifted.data(), 1.0, second.size());
  symbol.solve_in_place(second);
  return assemble(g, second);
}

GridFunction solve_harmonic_1d(double g_left, double g_right, const UniformGrid& grid) {
  if (grid.dim() != 1) throw ShapeError("solve_harmonic_1d needs a one-dimensional grid");
  GridFunction out(grid);
  const std::size_t m = grid.panels(0);
  for (std::size_t i = 0; i <= m; ++i)
    out(i) = g_left + (g_right - g_left) * (static_cast<double>(i) / static_cast<double>(m));
  out(m) = g_right;
  return out;
}

GridFunction solve_harmonic(const BoundaryValues& g, int order) {
  if (order != 4 && order != 6) throw ShapeError("harmonic order must be 4 or 6");
  if (g.grid().dim() == 1) return solve_harmonic_1d(g.face(0, 0)[0], g.face(0, 1)[0], g.grid());
  return order == 4 ? solve_harmonic_4th(g) : solve_harmonic_6th(g);
}

}  // namespace fsp
