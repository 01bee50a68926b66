#include "fsp/dirichlet_poisson.hpp"

#include <numbers>
#include <sstream>

#include "fsp/errors.hpp"
#include "fsp/kernels.hpp"

namespace fsp {

ContinuousEigenvalueTable::ContinuousEigenvalueTable(const UniformGrid& g) : grid(g), values(g.interior_count()) {
  const Extents e = g.interior_extents();
  std::array<std::vector<double>, kMaxDim> axis;
  for (int s = 0; s < kMaxDim; ++s) {
    axis[s].assign(e[s], 0.0);
    if (s >= g.dim()) continue;
    const double w = std::numbers::pi / g.length(s);
    for (std::size_t k = 0; k < e[s]; ++k) {
      const double kw = static_cast<double>(k + 1) * w;
      axis[s][k] = -kw * kw;
    }
  }
  std::size_t at = 0;
  for (std::size_t i = 0; i < e[0]; ++i)
    for (std::size_t j = 0; j < e[1]; ++j)
      for (std::size_t k = 0; k < e[2]; ++k) values[at++] = axis[0][i] + axis[1][j] + axis[2][k];
}

void check_boundary_support(const GridFunction& rho) {
  const double peak = rho.max_abs();
  const double edge = rho.max_abs_boundary();
  if (edge > kSupportTolerance * peak) {
    std::ostringstream os;
    os << "density does not vanish on the domain boundary (max boundary |rho| = " << edge
       << ", max |rho| = " << peak << "); enlarge the domain or add padding panels";
    throw SupportError(os.str());
  }
}

GridFunction solve_phi_star(const GridFunction& rho) {
  check_boundary_support(rho);
  InteriorModeArray coeffs = forward_dst(rho);
  const ContinuousEigenvalueTable table(rho.grid());
  AlignedVector<double> inverse(table.values.size());
  for (std::size_t n = 0; n < inverse.size(); ++n) inverse[n] = 1.0 / table.values[n];
  kernels::active().multiply(coeffs.coefficients.data(), inverse.data(), inverse.size());
  return inverse_dst(coeffs);
}

}  // namespace fsp
