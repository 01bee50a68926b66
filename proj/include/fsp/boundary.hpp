#pragma once

#include <array>
#include <cstddef>

#include "fsp/grid.hpp"

namespace fsp {

/// Layout of the per-slice convolutions that produce the values on one axis's
/// pair of faces.
///
/// Source slices are the planes (lines in 2D) normal to `axis` at interior
/// indices 1 .. panels(axis)-1. The kernel for a slice at normal distance
/// d*mesh(axis) covers in-face offsets -panels .. +panels on every in-face axis,
/// so every (target, source) pair is represented.
struct FaceConvolutionPlan {
  int axis = 0;
  int rank = 1;                               ///< in-face dimension (1 in 2D, 2 in 3D)
  std::array<std::size_t, 2> face{1, 1};      ///< in-face node counts
  std::array<std::size_t, 2> kernel{1, 1};    ///< kernel sample counts, 2*panels+1 per in-face axis
  std::array<std::size_t, 2> padded{1, 1};    ///< transform lengths, 7-smooth >= kernel + face - 1
  std::array<std::size_t, 2> window{0, 0};    ///< first full-convolution index of face node 0

  /// Normal distance (in panels) from a slice to the face on `side`.
  std::size_t distance(std::size_t slice, int side, std::size_t panels) const {
    return side == 0 ? slice : panels - slice;
  }
};

FaceConvolutionPlan make_face_plan(const UniformGrid& grid, int axis);

/// Trapezoidal sum of the Green's-function integral at every boundary node,
/// one node at a time over all interior source nodes. Reference implementation.
BoundaryValues boundary_values_naive(const GridFunction& rho);

/// Same sums accumulated as FFT-based convolutions over source slices parallel
/// to each face. Output is bitwise independent of thread_count.
BoundaryValues boundary_values_fast(const GridFunction& rho, unsigned thread_count = 1);

}  // namespace fsp
