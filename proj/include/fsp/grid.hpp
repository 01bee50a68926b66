#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fsp {

inline constexpr int kMaxDim = 3;

/// Node multi-index; entries past the grid dimension are zero.
using Index = std::array<std::size_t, kMaxDim>;
/// Physical point; entries past the grid dimension are zero.
using Point = std::array<double, kMaxDim>;
/// Node counts per axis; entries past the grid dimension are one.
using Extents = std::array<std::size_t, kMaxDim>;

/// Rectangular domain in 1, 2 or 3 dimensions with a uniform mesh on each axis.
///
/// Nodes are numbered 0..panels(s) on axis s and sit at lower(s) + i*mesh(s).
/// Mesh widths may differ between axes.
class UniformGrid {
 public:
  UniformGrid(std::span<const double> lower, std::span<const double> upper,
              std::span<const std::size_t> panels);

  /// [lo, hi]^dim with the same panel count on every axis.
  static UniformGrid cube(int dim, double lo, double hi, std::size_t panels);

  int dim() const { return dim_; }
  double lower(int axis) const { return lower_[axis]; }
  double upper(int axis) const { return upper_[axis]; }
  double length(int axis) const { return upper_[axis] - lower_[axis]; }
  double mesh(int axis) const { return mesh_[axis]; }
  std::size_t panels(int axis) const { return panels_[axis]; }

  /// Node counts per axis (panels + 1), padded with ones.
  Extents extents() const;
  /// Interior node counts per axis (panels - 1), padded with ones.
  Extents interior_extents() const;
  std::size_t node_count() const;
  std::size_t interior_count() const;

  /// Product of the mesh widths (trapezoidal weight of an interior node).
  double cell_volume() const;

  double coordinate(int axis, std::size_t i) const { return lower_[axis] + static_cast<double>(i) * mesh_[axis]; }
  Point point(const Index& index) const;

  std::size_t linear_index(const Index& index) const;
  bool is_boundary(const Index& index) const;

  friend bool operator==(const UniformGrid& a, const UniformGrid& b);

 private:
  int dim_ = 0;
  std::array<double, kMaxDim> lower_{};
  std::array<double, kMaxDim> upper_{};
  std::array<double, kMaxDim> mesh_{};
  std::array<std::size_t, kMaxDim> panels_{};
};

/// Coordinates of a grid node; throws IndexError when the index is out of range.
Point node_coordinate(const UniformGrid& grid, const Index& index);

/// Scalar values on every node of a grid, boundary included, x slowest.
class GridFunction {
 public:
  explicit GridFunction(UniformGrid grid);
  GridFunction(UniformGrid grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const UniformGrid& grid, F&& f) {
    GridFunction out(grid);
    const Extents n = grid.extents();
    std::size_t at = 0;
    for (std::size_t i = 0; i < n[0]; ++i)
      for (std::size_t j = 0; j < n[1]; ++j)
        for (std::size_t k = 0; k < n[2]; ++k) out.values_[at++] = f(grid.point({i, j, k}));
    return out;
  }

  const UniformGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  Extents extents() const { return grid_.extents(); }

  double& operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) {
    return values_[(i * ext_[1] + j) * ext_[2] + k];
  }
  double operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) const {
    return values_[(i * ext_[1] + j) * ext_[2] + k];
  }
  double& operator[](const Index& index) { return (*this)(index[0], index[1], index[2]); }
  double operator[](const Index& index) const { return (*this)(index[0], index[1], index[2]); }

  double max_abs() const;
  double max_abs_boundary() const;

  GridFunction& operator+=(const GridFunction& other);

 private:
  UniformGrid grid_;
  Extents ext_;
  std::vector<double> values_;
};

/// Max over all nodes of |f - g|; throws ShapeError for different grids.
double max_norm_difference(const GridFunction& f, const GridFunction& g);

/// Samples f at the nodes of `sub` without interpolation.
/// Every node of `sub` must coincide with a node of f's grid to within 1e-12*mesh.
GridFunction restrict_to_subgrid(const GridFunction& f, const UniformGrid& sub);

/// Places f into a larger node-aligned grid, filling new nodes with zero.
GridFunction embed(const GridFunction& f, const UniformGrid& super);

/// Dirichlet data: one value array per face, covering all of that face's nodes.
///
/// A face array holds the nodes of the grid with the face-normal axis removed,
/// remaining axes in storage order. Edge and corner nodes appear in every face
/// that contains them.
class BoundaryValues {
 public:
  explicit BoundaryValues(UniformGrid grid);

  static BoundaryValues from_grid_function(const GridFunction& f);

  const UniformGrid& grid() const { return grid_; }
  int face_count() const { return 2 * grid_.dim(); }

  /// In-face node counts {rows, cols}; ones for missing axes.
  std::array<std::size_t, 2> face_extents(int axis) const;
  std::span<double> face(int axis, int side) { return faces_[2 * axis + side]; }
  std::span<const double> face(int axis, int side) const { return faces_[2 * axis + side]; }

  /// Value at a boundary node, read from the lowest-numbered face containing it.
  double at(const Index& index) const;

  /// Boundary values in place, zero interior.
  GridFunction to_grid_function() const;

  /// Largest mismatch on nodes shared by several faces, relative to max |value|.
  double consistency_defect() const;
  /// Throws ShapeError when consistency_defect() exceeds tol.
  void check_consistency(double tol = 1e-12) const;

  double max_abs() const;

 private:
  std::size_t face_offset(int axis, const Index& index) const;

  UniformGrid grid_;
  std::vector<std::vector<double>> faces_;
};

/// Max over boundary nodes of |a - b| / max(|a|) ; grids must match.
double max_relative_difference(const BoundaryValues& a, const BoundaryValues& b);

}  // namespace fsp
