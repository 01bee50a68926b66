#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsp/solver.hpp"
#include "fsp/test_functions.hpp"

namespace fsp {

enum class StudyKind { Solve, Convergence, Domain, Threads };

StudyKind parse_study_kind(const std::string& name);
const char* study_kind_name(StudyKind kind);

/// One study run. Grid sizes come from `h_list` (convergence) or from
/// `panels` / `h_list.front()` (solve, domain, threads).
struct StudySpec {
  StudyKind kind = StudyKind::Convergence;
  int dim = 3;
  std::vector<double> domain;             ///< lo0 hi0 [lo1 hi1 [lo2 hi2]]; empty means [-1, 1]^dim
  std::vector<std::size_t> panels;        ///< one value (all axes) or one per axis
  std::vector<double> h_list;
  int order = 6;
  int differentiability = 6;
  double epsilon = 0.4;
  std::vector<double> center;             ///< empty means the default off-axis center
  double rho_scale = 1.0;
  std::size_t padding_panels = 0;
  bool fft_friendly_expansion = false;
  std::vector<unsigned> threads{1};
  std::vector<double> d_list;
  std::optional<double> fit_min_h, fit_max_h;
};

/// Center used by the 3D experiments, truncated to dim coordinates.
std::vector<double> default_bump_center(int dim);

/// Nodes allowed in one grid before a study refuses to run.
inline constexpr std::size_t kMaxStudyNodes = std::size_t{1} << 27;

/// Fills defaults and checks everything a study needs before any solve;
/// throws ShapeError / SupportError with a description of the problem.
StudySpec normalized(const StudySpec& spec);

/// Grid over the spec's domain with mesh h on every axis (h must divide each side).
UniformGrid study_grid(const StudySpec& spec, double h);
/// Grid over the spec's domain from `panels`.
UniformGrid study_grid(const StudySpec& spec);
PolyBump study_bump(const StudySpec& spec);
SolverConfig study_config(const StudySpec& spec, unsigned threads);

/// max |phi - exact| / max |exact| over the nodes of phi's grid.
double max_relative_error(const GridFunction& phi, const PolyBump& bump, double scale = 1.0);

struct ConvergenceRow {
  double h = 0.0;
  std::size_t panels = 0;
  int order = 6;
  int differentiability = 0;
  double max_rel_err = 0.0;
  PhaseTimings timings;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  std::optional<double> slope;  ///< empty when fewer than two rows fall in the fit window
};

/// Least-squares slope of log(err) against log(h) over rows with h in [min_h, max_h].
std::optional<double> fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& err,
                                       std::optional<double> min_h = {}, std::optional<double> max_h = {});

ConvergenceResult run_convergence_study(const StudySpec& spec);
std::vector<DomainStudyRow> run_domain_study(const StudySpec& spec);

struct ThreadRow {
  unsigned threads = 1;
  PhaseTimings timings;
  double speedup = 1.0;
};

/// Throws Error if any thread count changes a single bit of phi.
std::vector<ThreadRow> run_thread_benchmark(const StudySpec& spec);

/// Single solve of the spec's bump on the spec's grid.
SolveResult run_solve(const StudySpec& spec);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);
void write_domain_csv(std::ostream& os, const std::vector<DomainStudyRow>& rows);
void write_thread_csv(std::ostream& os, const std::vector<ThreadRow>& rows);
/// Node coordinates, phi and (if bump given) the analytic potential.
void write_solution_csv(std::ostream& os, const GridFunction& phi, const PolyBump* bump, double scale = 1.0);

/// Writes through a temporary file in the same directory and renames on success.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace fsp
