#pragma once

#include <span>

#include "fsp/dst.hpp"
#include "fsp/grid.hpp"

namespace fsp {

/// Eigenvalue of the [1, -2, 1]/h^2 second difference on discrete sine mode k
/// of an axis with `panels` panels: (2 cos(k pi / panels) - 2) / h^2.
double second_difference_eigenvalue(std::size_t k, std::size_t panels, double h);

/// Discrete symbol of the compact fourth-order operator
///
///   L = sum_s D2_s + sum_{r<s} (h_r^2 + h_s^2)/12 D2_r D2_s
///
/// (the 9-point operator in 2D, 19-point in 3D) on every interior sine mode.
/// The discrete sine modes are its eigenvectors, so L with homogeneous
/// Dirichlet data is inverted by two sine transforms.
class CompactOperatorSymbol {
 public:
  /// Throws ShapeError if any eigenvalue vanishes.
  explicit CompactOperatorSymbol(const UniformGrid& grid);

  const UniformGrid& grid() const { return grid_; }
  /// Lambda(k) over interior modes, k_s = 1 .. panels(s)-1, x slowest.
  std::span<const double> values() const { return values_; }
  double value(std::size_t k0, std::size_t k1 = 1, std::size_t k2 = 1) const;

  /// Solves L_0 u = rhs in place on an interior-sized array (homogeneous boundary).
  void solve_in_place(std::span<double> interior) const;

 private:
  UniformGrid grid_;
  AlignedVector<double> values_;
  AlignedVector<double> scaled_inverse_;  // 1 / (Lambda * transform normalization)
};

/// Scratch buffers and stencil passes on full grid functions. The boundary
/// layer of the node array is the one-node collar of every width-one stencil.
class StencilWorkspace {
 public:
  explicit StencilWorkspace(const UniformGrid& grid);

  /// out = D2_axis in at nodes with 1 <= index[axis] <= panels-1; zero elsewhere.
  void second_difference(std::span<const double> in, std::span<double> out, int axis) const;

  /// L u at interior nodes (zero on the boundary).
  GridFunction apply_compact(const GridFunction& u);

  const UniformGrid& grid() const { return grid_; }

 private:
  UniformGrid grid_;
  std::vector<std::vector<double>> single_;  // D2_s u per axis
  std::vector<double> pair_;
};

/// Compact operator applied to a full grid function; values at interior nodes.
GridFunction apply_compact_operator(const GridFunction& u);

/// Right-hand side that moves Dirichlet data out of the compact operator:
/// g~ = -L(E) at interior nodes, where E equals g on the boundary and zero inside.
/// Nonzero only on the first interior layer.
GridFunction transfer_boundary_to_rhs(const BoundaryValues& g);

/// Fourth-order solution of Laplace's equation with Dirichlet data g.
/// Requires at least 4 panels per axis (dim 2 or 3).
GridFunction solve_harmonic_4th(const BoundaryValues& g);

/// Smallest panel count per axis accepted by the sixth-order correction.
inline constexpr std::size_t kSixthOrderMinPanels = 7;

/// Deferred-correction right-hand side built from a fourth-order solution u1:
///   sum over axis pairs r<s of (h_r^4/240 + h_r^2 h_s^2/144) D2_r D2_r D2_s u1
///                           + (h_s^4/240 + h_r^2 h_s^2/144) D2_s D2_r D2_s u1.
/// Evaluated directly where the width-two stencils fit (every index in
/// [2, panels-2]); on the first interior layer it is cubically extrapolated
/// along the inward normal, averaging over the tied directions at edges and
/// corners. Boundary entries are zero.
GridFunction sixth_order_rhs(const GridFunction& u1);

/// Sixth-order solution: one deferred-correction step on top of solve_harmonic_4th.
GridFunction solve_harmonic_6th(const BoundaryValues& g);

/// Exact one-dimensional harmonic function (a line) between two endpoint values.
GridFunction solve_harmonic_1d(double g_left, double g_right, const UniformGrid& grid);

/// Dispatches on dimension and order (4 or 6).
GridFunction solve_harmonic(const BoundaryValues& g, int order);

}  // namespace fsp
