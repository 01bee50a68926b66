#include "fsp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fsp/errors.hpp"

namespace fsp {

namespace {

constexpr double kAlignTolerance = 1e-12;

// Per-axis index map from a subgrid into a parent grid: parent = offset + stride * sub.
struct AxisMap {
  std::size_t offset;
  std::size_t stride;
};

AxisMap align_axis(const UniformGrid& parent, const UniformGrid& sub, int axis) {
  const double h = parent.mesh(axis);
  const double offset_f = (sub.lower(axis) - parent.lower(axis)) / h;
  const double stride_f = sub.mesh(axis) / h;
  const double offset_r = std::round(offset_f);
  const double stride_r = std::round(stride_f);
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "subgrid axis " << axis << " is not node-aligned with parent grid: " << why;
    throw AlignmentError(os.str());
  };
  if (offset_r < 0.0) fail("subgrid starts below parent domain");
  if (stride_r < 1.0) fail("subgrid mesh finer than parent mesh");
  AxisMap map{static_cast<std::size_t>(offset_r), static_cast<std::size_t>(stride_r)};
  if (map.offset + map.stride * sub.panels(axis) > parent.panels(axis)) fail("subgrid extends past parent domain");
  const double tol = kAlignTolerance * h;
  for (std::size_t i = 0; i <= sub.panels(axis); ++i) {
    const double mine = sub.coordinate(axis, i);
    const double theirs = parent.coordinate(axis, map.offset + map.stride * i);
    if (std::abs(mine - theirs) > tol) {
      std::ostringstream os;
      os << "node " << i << " at " << mine << " misses parent node at " << theirs;
      fail(os.str());
    }
  }
  return map;
}

}  // namespace

UniformGrid::UniformGrid(std::span<const double> lower, std::span<const double> upper,
                         std::span<const std::size_t> panels) {
  if (lower.size() != upper.size() || lower.size() != panels.size())
    throw ShapeError("grid bounds and panel counts must have the same length");
  if (lower.empty() || lower.size() > static_cast<std::size_t>(kMaxDim))
    throw ShapeError("grid dimension must be 1, 2 or 3");
  dim_ = static_cast<int>(lower.size());
  for (int s = 0; s < kMaxDim; ++s) {
    if (s < dim_) {
      if (!(upper[s] > lower[s])) throw ShapeError("grid upper bound must exceed lower bound on every axis");
      if (panels[s] < 2) throw ShapeError("grid needs at least 2 panels per axis");
      lower_[s] = lower[s];
      upper_[s] = upper[s];
      panels_[s] = panels[s];
      mesh_[s] = (upper[s] - lower[s]) / static_cast<double>(panels[s]);
    } else {
      lower_[s] = upper_[s] = mesh_[s] = 0.0;
      panels_[s] = 0;
    }
  }
}

UniformGrid UniformGrid::cube(int dim, double lo, double hi, std::size_t panels) {
  if (dim < 1 || dim > kMaxDim) throw ShapeError("grid dimension must be 1, 2 or 3");
  std::vector<double> l(dim, lo), u(dim, hi);
  std::vector<std::size_t> m(dim, panels);
  return UniformGrid(l, u, m);
}

Extents UniformGrid::extents() const {
  Extents e{1, 1, 1};
  for (int s = 0; s < dim_; ++s) e[s] = panels_[s] + 1;
  return e;
}

Extents UniformGrid::interior_extents() const {
  Extents e{1, 1, 1};
  for (int s = 0; s < dim_; ++s) e[s] = panels_[s] - 1;
  return e;
}

std::size_t UniformGrid::node_count() const {
  const Extents e = extents();
  return e[0] * e[1] * e[2];
}

std::size_t UniformGrid::interior_count() const {
  const Extents e = interior_extents();
  return e[0] * e[1] * e[2];
}

double UniformGrid::cell_volume() const {
  double v = 1.0;
  for (int s = 0; s < dim_; ++s) v *= mesh_[s];
  return v;
}

Point UniformGrid::point(const Index& index) const {
  Point p{0.0, 0.0, 0.0};
  for (int s = 0; s < dim_; ++s) p[s] = coordinate(s, index[s]);
  return p;
}

std::size_t UniformGrid::linear_index(const Index& index) const {
  const Extents e = extents();
  return (index[0] * e[1] + index[1]) * e[2] + index[2];
}

bool UniformGrid::is_boundary(const Index& index) const {
  for (int s = 0; s < dim_; ++s)
    if (index[s] == 0 || index[s] == panels_[s]) return true;
  return false;
}

bool operator==(const UniformGrid& a, const UniformGrid& b) {
  return a.dim_ == b.dim_ && a.lower_ == b.lower_ && a.upper_ == b.upper_ && a.panels_ == b.panels_;
}

Point node_coordinate(const UniformGrid& grid, const Index& index) {
  for (int s = 0; s < kMaxDim; ++s) {
    const std::size_t limit = s < grid.dim() ? grid.panels(s) : 0;
    if (index[s] > limit) {
      std::ostringstream os;
      os << "node index " << index[s] << " on axis " << s << " outside [0, " << limit << "]";
      throw IndexError(os.str());
    }
  }
  return grid.point(index);
}

GridFunction::GridFunction(UniformGrid grid)
    : grid_(std::move(grid)), ext_(grid_.extents()), values_(grid_.node_count(), 0.0) {}

GridFunction::GridFunction(UniformGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), ext_(grid_.extents()), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) throw ShapeError("value array length does not match grid node count");
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::max_abs_boundary() const {
  double m = 0.0;
  for (std::size_t i = 0; i < ext_[0]; ++i)
    for (std::size_t j = 0; j < ext_[1]; ++j)
      for (std::size_t k = 0; k < ext_[2]; ++k)
        if (grid_.is_boundary({i, j, k})) m = std::max(m, std::abs((*this)(i, j, k)));
  return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw ShapeError("cannot add grid functions on different grids");
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
  return *this;
}

double max_norm_difference(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw ShapeError("max_norm_difference needs identical grids");
  double m = 0.0;
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

GridFunction restrict_to_subgrid(const GridFunction& f, const UniformGrid& sub) {
  const UniformGrid& parent = f.grid();
  if (parent.dim() != sub.dim()) throw ShapeError("subgrid dimension differs from parent");
  std::array<AxisMap, kMaxDim> map{};
  for (int s = 0; s < kMaxDim; ++s) map[s] = s < sub.dim() ? align_axis(parent, sub, s) : AxisMap{0, 1};
  GridFunction out(sub);
  const Extents n = sub.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k)
        out(i, j, k) = f(map[0].offset + map[0].stride * i, map[1].offset + map[1].stride * j,
                         map[2].offset + map[2].stride * k);
  return out;
}

GridFunction embed(const GridFunction& f, const UniformGrid& super) {
  const UniformGrid& sub = f.grid();
  if (super.dim() != sub.dim()) throw ShapeError("embedding grid dimension differs");
  std::array<AxisMap, kMaxDim> map{};
  for (int s = 0; s < kMaxDim; ++s) {
    map[s] = s < sub.dim() ? align_axis(super, sub, s) : AxisMap{0, 1};
    if (map[s].stride != 1) throw AlignmentError("embedding requires identical mesh widths");
  }
  GridFunction out(super);
  const Extents n = sub.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k)
        out(map[0].offset + i, map[1].offset + j, map[2].offset + k) = f(i, j, k);
  return out;
}

// ---------------------------------------------------------------------------
// BoundaryValues

BoundaryValues::BoundaryValues(UniformGrid grid) : grid_(std::move(grid)) {
  faces_.resize(2 * grid_.dim());
  for (int axis = 0; axis < grid_.dim(); ++axis) {
    const auto fe = face_extents(axis);
    faces_[2 * axis].assign(fe[0] * fe[1], 0.0);
    faces_[2 * axis + 1].assign(fe[0] * fe[1], 0.0);
  }
}

std::array<std::size_t, 2> BoundaryValues::face_extents(int axis) const {
  std::array<std::size_t, 2> fe{1, 1};
  int slot = 0;
  for (int s = 0; s < grid_.dim(); ++s)
    if (s != axis) fe[slot++] = grid_.panels(s) + 1;
  return fe;
}

std::size_t BoundaryValues::face_offset(int axis, const Index& index) const {
  const auto fe = face_extents(axis);
  std::array<std::size_t, 2> in{0, 0};
  int slot = 0;
  for (int s = 0; s < grid_.dim(); ++s)
    if (s != axis) in[slot++] = index[s];
  return in[0] * fe[1] + in[1];
}

BoundaryValues BoundaryValues::from_grid_function(const GridFunction& f) {
  BoundaryValues b(f.grid());
  const UniformGrid& g = f.grid();
  const Extents n = g.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k) {
        const Index idx{i, j, k};
        for (int axis = 0; axis < g.dim(); ++axis) {
          if (idx[axis] == 0) b.faces_[2 * axis][b.face_offset(axis, idx)] = f[idx];
          if (idx[axis] == g.panels(axis)) b.faces_[2 * axis + 1][b.face_offset(axis, idx)] = f[idx];
        }
      }
  return b;
}

double BoundaryValues::at(const Index& index) const {
  for (int axis = 0; axis < grid_.dim(); ++axis) {
    if (index[axis] == 0) return faces_[2 * axis][face_offset(axis, index)];
    if (index[axis] == grid_.panels(axis)) return faces_[2 * axis + 1][face_offset(axis, index)];
  }
  throw IndexError("BoundaryValues::at called with an interior node");
}

GridFunction BoundaryValues::to_grid_function() const {
  GridFunction out(grid_);
  const Extents n = grid_.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k) {
        const Index idx{i, j, k};
        if (grid_.is_boundary(idx)) out[idx] = at(idx);
      }
  return out;
}

double BoundaryValues::max_abs() const {
  double m = 0.0;
  for (const auto& face : faces_)
    for (double v : face) m = std::max(m, std::abs(v));
  return m;
}

double BoundaryValues::consistency_defect() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  const Extents n = grid_.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k) {
        const Index idx{i, j, k};
        if (!grid_.is_boundary(idx)) continue;
        const double ref = at(idx);
        for (int axis = 0; axis < grid_.dim(); ++axis) {
          if (idx[axis] == 0) worst = std::max(worst, std::abs(faces_[2 * axis][face_offset(axis, idx)] - ref));
          if (idx[axis] == grid_.panels(axis))
            worst = std::max(worst, std::abs(faces_[2 * axis + 1][face_offset(axis, idx)] - ref));
        }
      }
  return worst / scale;
}

void BoundaryValues::check_consistency(double tol) const {
  const double defect = consistency_defect();
  if (defect > tol) {
    std::ostringstream os;
    os << "boundary values disagree on shared nodes (relative defect " << defect << ")";
    throw ShapeError(os.str());
  }
}

double max_relative_difference(const BoundaryValues& a, const BoundaryValues& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("boundary value sets live on different grids");
  double diff = 0.0;
  for (int f = 0; f < a.face_count(); ++f) {
    const auto fa = a.face(f / 2, f % 2);
    const auto fb = b.face(f / 2, f % 2);
    for (std::size_t n = 0; n < fa.size(); ++n) diff = std::max(diff, std::abs(fa[n] - fb[n]));
  }
  const double scale = a.max_abs();
  return scale == 0.0 ? diff : diff / scale;
}

}  // namespace fsp
