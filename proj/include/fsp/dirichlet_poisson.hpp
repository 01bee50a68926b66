#pragma once

#include "fsp/dst.hpp"
#include "fsp/grid.hpp"

namespace fsp {

/// Continuous Laplacian eigenvalues on the box, one per interior sine mode:
/// lambda(k) = -sum_s (k_s pi / L_s)^2.
struct ContinuousEigenvalueTable {
  explicit ContinuousEigenvalueTable(const UniformGrid& grid);

  UniformGrid grid;
  AlignedVector<double> values;
};

/// Max boundary |rho| allowed, relative to max |rho|, before the density is
/// considered to violate the compact-support assumption.
inline constexpr double kSupportTolerance = 1e-14;

/// Throws SupportError when rho does not vanish on the grid boundary.
void check_boundary_support(const GridFunction& rho);

/// Spectrally accurate solution of  Laplacian(phi*) = rho,  phi* = 0 on the boundary.
///
/// rho is expanded in the discrete sine basis and each coefficient is divided by
/// the continuous eigenvalue, so phi* exactly solves Poisson's equation for the
/// sine interpolant of rho. Boundary values of the result are exactly zero.
GridFunction solve_phi_star(const GridFunction& rho);

}  // namespace fsp
