#pragma once

#include <span>
#include <vector>

namespace fsp {

/// Free-space Green's function of the Laplacian: r/2, log(r)/(2 pi), -1/(4 pi r)
/// for dim 1, 2, 3. Throws SingularityError for r == 0 in 2D/3D.
double green_value(int dim, double r);

/// Green's function along one varying axis with the other dim-1 offsets held fixed:
/// result[n] = G(sqrt(|fixed_offsets|^2 + offsets[n]^2)).
std::vector<double> kernel_slice(int dim, std::span<const double> fixed_offsets, std::span<const double> offsets);

/// Green's function on the (dim-1)-dimensional lattice of in-face offsets at
/// distance `normal` from a face: row-major over offsets0 x offsets1 (dim 3), or
/// over offsets0 alone (dim 2, offsets1 empty).
std::vector<double> kernel_plane(int dim, double normal, std::span<const double> offsets0,
                                 std::span<const double> offsets1 = {});

}  // namespace fsp
