#include "fsp/greens.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fsp/errors.hpp"

namespace fsp {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw ShapeError("Green's function dimension must be 1, 2 or 3");
}

[[noreturn]] void singular(int dim) {
  std::ostringstream os;
  os << "Green's function evaluated at zero distance in " << dim << "D";
  throw SingularityError(os.str());
}

// r2 is the squared distance; avoids a sqrt for the 2D log.
double green_from_squared(int dim, double r2) {
  switch (dim) {
    case 1:
      return 0.5 * std::sqrt(r2);
    case 2:
      if (r2 == 0.0) singular(2);
      return std::log(r2) * (0.25 * std::numbers::inv_pi);
    default:
      if (r2 == 0.0) singular(3);
      return -(0.25 * std::numbers::inv_pi) / std::sqrt(r2);
  }
}

}  // namespace

double green_value(int dim, double r) {
  check_dim(dim);
  if (!(r >= 0.0)) throw ShapeError("Green's function needs a nonnegative distance");
  switch (dim) {
    case 1:
      return 0.5 * r;
    case 2:
      if (r == 0.0) singular(2);
      return std::log(r) * (0.5 * std::numbers::inv_pi);
    default:
      if (r == 0.0) singular(3);
      return -(0.25 * std::numbers::inv_pi) / r;
  }
}

std::vector<double> kernel_slice(int dim, std::span<const double> fixed_offsets, std::span<const double> offsets) {
  check_dim(dim);
  if (fixed_offsets.size() != static_cast<std::size_t>(dim - 1))
    throw ShapeError("kernel_slice needs dim-1 fixed offsets");
  double fixed2 = 0.0;
  for (double f : fixed_offsets) fixed2 += f * f;
  std::vector<double> out(offsets.size());
  for (std::size_t n = 0; n < offsets.size(); ++n) out[n] = green_from_squared(dim, fixed2 + offsets[n] * offsets[n]);
  return out;
}

std::vector<double> kernel_plane(int dim, double normal, std::span<const double> offsets0,
                                 std::span<const double> offsets1) {
  if (dim != 2 && dim != 3) throw ShapeError("kernel_plane is defined for dim 2 and 3");
  const double n2 = normal * normal;
  if (dim == 2) {
    std::vector<double> out(offsets0.size());
    for (std::size_t a = 0; a < offsets0.size(); ++a) out[a] = green_from_squared(2, n2 + offsets0[a] * offsets0[a]);
    return out;
  }
  std::vector<double> out(offsets0.size() * offsets1.size());
  std::size_t at = 0;
  for (double o0 : offsets0) {
    const double r0 = n2 + o0 * o0;
    for (double o1 : offsets1) out[at++] = green_from_squared(3, r0 + o1 * o1);
  }
  return out;
}

}  // namespace fsp
