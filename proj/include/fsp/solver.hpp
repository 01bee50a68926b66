#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fsp/grid.hpp"

namespace fsp {

struct SolverConfig {
  int order = 6;                       ///< harmonic correction order, 4 or 6
  std::size_t padding_panels = 0;      ///< zero collar added on every side, in panels
  bool fft_friendly_expansion = false; ///< round panel counts up to 7-smooth integers
  unsigned thread_count = 1;
};

struct PhaseTimings {
  double phi_star_s = 0.0;
  double boundary_s = 0.0;
  double harmonic_s = 0.0;
  double total() const { return phi_star_s + boundary_s + harmonic_s; }
};

struct SolveReport {
  UniformGrid user_grid;
  UniformGrid padded_grid;
  PhaseTimings timings;
  double max_boundary_rho = 0.0;  ///< max |rho| on the padded grid's boundary
};

struct SolveResult {
  GridFunction phi;  ///< on the user grid
  SolveReport report;
};

using Density = std::function<double(const Point&)>;

/// Grid extended by `padding_panels` on every side with the same mesh widths,
/// then (optionally) widened to 7-smooth panel counts, the extra panels split
/// as evenly as possible with the odd one on the upper side. The original
/// nodes are a subset of the new nodes.
UniformGrid pad_domain(const UniformGrid& grid, const SolverConfig& config);

/// Free-space potential of rho at the nodes of user_grid:
/// phi = phi* + phi_H on the padded grid, restricted to user_grid.
/// Samples are zero-filled outside user_grid; a callable is sampled on the padded grid.
SolveResult solve(const GridFunction& rho_samples, const SolverConfig& config);
SolveResult solve(const Density& rho, const UniformGrid& user_grid, const SolverConfig& config);

/// Same pipeline on a grid whose boundary already carries the zero collar;
/// also returns the boundary values used for phi_H.
struct PaddedSolve {
  GridFunction phi;
  BoundaryValues boundary;
  PhaseTimings timings;
};
PaddedSolve solve_padded(const GridFunction& rho, const SolverConfig& config);

struct DomainStudyRow {
  double extent = 1.0;              ///< D of [-D, D]^dim
  double max_relative_difference = 0.0;
};

/// For each D, solves on [-D, D]^dim at the mesh width of `base_grid`
/// (which must be [-1, 1]^dim) and reports the max difference from the base
/// solution on the base nodes, relative to the base solution's max norm.
/// Throws AlignmentError if (D - 1) is not a whole number of mesh widths.
std::vector<DomainStudyRow> domain_invariance_study(const Density& rho, const UniformGrid& base_grid,
                                                    std::span<const double> extents, const SolverConfig& config);

/// Grid [-D, D]^dim with the mesh of `base_grid`; AlignmentError if not node-aligned.
UniformGrid extended_grid(const UniformGrid& base_grid, double extent);

}  // namespace fsp
