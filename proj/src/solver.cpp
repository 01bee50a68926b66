#include "fsp/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "fsp/boundary.hpp"
#include "fsp/dirichlet_poisson.hpp"
#include "fsp/dst.hpp"
#include "fsp/errors.hpp"
#include "fsp/harmonic.hpp"

namespace fsp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate(const SolverConfig& config, const UniformGrid& padded) {
  if (config.order != 4 && config.order != 6) throw ShapeError("harmonic order must be 4 or 6");
  if (config.thread_count == 0) throw Error("thread_count must be positive");
  if (padded.dim() == 1) return;
  const std::size_t minimum = config.order == 6 ? kSixthOrderMinPanels : 4;
  for (int s = 0; s < padded.dim(); ++s)
    if (padded.panels(s) < minimum) {
      std::ostringstream os;
      os << "order " << config.order << " needs at least " << minimum << " panels per axis on the padded grid";
      throw ShapeError(os.str());
    }
}

}  // namespace

UniformGrid pad_domain(const UniformGrid& grid, const SolverConfig& config) {
  std::vector<double> lower(grid.dim()), upper(grid.dim());
  std::vector<std::size_t> panels(grid.dim());
  for (int s = 0; s < grid.dim(); ++s) {
    std::size_t below = config.padding_panels, above = config.padding_panels;
    std::size_t total = grid.panels(s) + below + above;
    if (config.fft_friendly_expansion) {
      const std::size_t extra = next_smooth(total) - total;
      below += extra / 2;
      above += extra - extra / 2;
      total += extra;
    }
    const double h = grid.mesh(s);
    lower[s] = grid.lower(s) - static_cast<double>(below) * h;
    upper[s] = grid.upper(s) + static_cast<double>(above) * h;
    panels[s] = total;
  }
  return UniformGrid(lower, upper, panels);
}

PaddedSolve solve_padded(const GridFunction& rho, const SolverConfig& config) {
  validate(config, rho.grid());
  check_boundary_support(rho);
  PhaseTimings timings;

  auto start = Clock::now();
  GridFunction phi = solve_phi_star(rho);
  timings.phi_star_s = seconds_since(start);

  start = Clock::now();
  BoundaryValues boundary = boundary_values_fast(rho, config.thread_count);
  timings.boundary_s = seconds_since(start);

  start = Clock::now();
  const GridFunction harmonic = solve_harmonic(boundary, config.order);
  timings.harmonic_s = seconds_since(start);

  phi += harmonic;
  return {std::move(phi), std::move(boundary), timings};
}

SolveResult solve(const GridFunction& rho_samples, const SolverConfig& config) {
  const UniformGrid& user = rho_samples.grid();
  const UniformGrid padded = pad_domain(user, config);
  const GridFunction rho = padded == user ? rho_samples : embed(rho_samples, padded);
  PaddedSolve result = solve_padded(rho, config);
  return {restrict_to_subgrid(result.phi, user), {user, padded, result.timings, rho.max_abs_boundary()}};
}

SolveResult solve(const Density& density, const UniformGrid& user_grid, const SolverConfig& config) {
  const UniformGrid padded = pad_domain(user_grid, config);
  const GridFunction rho = GridFunction::sample(padded, density);
  PaddedSolve result = solve_padded(rho, config);
  return {restrict_to_subgrid(result.phi, user_grid), {user_grid, padded, result.timings, rho.max_abs_boundary()}};
}

UniformGrid extended_grid(const UniformGrid& base, double extent) {
  const double grow = extent - 1.0;
  if (grow < 0.0) throw AlignmentError("domain extent must be at least 1");
  std::vector<double> lower(base.dim()), upper(base.dim());
  std::vector<std::size_t> panels(base.dim());
  for (int s = 0; s < base.dim(); ++s) {
    const double h = base.mesh(s);
    const double steps = std::round(grow / h);
    if (std::abs(grow - steps * h) > 1e-12 * h) {
      std::ostringstream os;
      os << "domain extent D = " << extent << " is not a whole number of mesh widths (h = " << h << ") from the base";
      throw AlignmentError(os.str());
    }
    lower[s] = base.lower(s) - grow;
    upper[s] = base.upper(s) + grow;
    panels[s] = base.panels(s) + 2 * static_cast<std::size_t>(steps);
  }
  return UniformGrid(lower, upper, panels);
}

std::vector<DomainStudyRow> domain_invariance_study(const Density& rho, const UniformGrid& base_grid,
                                                    std::span<const double> extents, const SolverConfig& config) {
  // Validate every extent before any solve.
  std::vector<UniformGrid> grids;
  for (double d : extents) grids.push_back(extended_grid(base_grid, d));
  const GridFunction base = solve(rho, base_grid, config).phi;
  const double scale = base.max_abs();
  std::vector<DomainStudyRow> rows;
  for (std::size_t n = 0; n < grids.size(); ++n) {
    const GridFunction wide = solve(rho, grids[n], config).phi;
    const double diff = max_norm_difference(restrict_to_subgrid(wide, base_grid), base);
    rows.push_back({extents[n], scale == 0.0 ? diff : diff / scale});
  }
  return rows;
}

}  // namespace fsp
