// Front end for single solves and the convergence / domain / thread studies.
//
//   fsp_cli convergence --dim 3 --diff 8 --order 6 --h-list 0.1 0.05 0.025 --fit-min-h 0.02
//   fsp_cli domain --h-list 0.1 --d-list 1 1.2 1.6 2
//   fsp_cli threads --panels 64 --threads 1 2 4 8
//   fsp_cli solve --panels 40 --format pgrid --out phi.pgrid
//
// Any long option may also be given as `key = value` in a file passed with --config;
// flags on the command line win.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "fsp/errors.hpp"
#include "fsp/grid_io.hpp"
#include "fsp/study.hpp"

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    fsp::write_file_atomically(out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-space Poisson solver: single solves and convergence studies"};
  app.set_config("--config", "", "key = value file with defaults for any long option");
  app.require_subcommand(1);
  app.fallthrough();

  fsp::StudySpec spec;
  std::optional<int> p_exponent;
  std::string out, format = "csv", rho_file;
  bool binary = false;

  app.add_option("--dim", spec.dim, "Space dimension")->check(CLI::Range(1, 3));
  app.add_option("--domain", spec.domain, "Box bounds: lo hi per axis (default [-1,1]^dim)");
  app.add_option("--panels", spec.panels, "Panels per axis (one value or one per axis)");
  app.add_option("--h-list", spec.h_list, "Mesh widths; each must divide the domain sides");
  app.add_option("--order", spec.order, "Harmonic correction order")->check(CLI::IsMember({4, 6}));
  auto* diff = app.add_option("--diff", spec.differentiability, "Continuous derivatives of the bump")
                   ->check(CLI::NonNegativeNumber);
  app.add_option("--p", p_exponent, "Bump exponent p (differentiability p-1)")->excludes(diff)->check(
      CLI::PositiveNumber);
  app.add_option("--eps", spec.epsilon, "Bump support radius")->check(CLI::PositiveNumber);
  app.add_option("--center", spec.center, "Bump center, dim values");
  app.add_option("--rho-scale", spec.rho_scale, "Multiplier applied to the density");
  app.add_option("--padding-panels", spec.padding_panels, "Zero collar added on every side");
  app.add_flag("--fft-friendly", spec.fft_friendly_expansion, "Round padded panel counts up to 7-smooth");
  app.add_option("--threads", spec.threads, "Thread count (thread study: list of counts)");
  app.add_option("--d-list", spec.d_list, "Domain study extents D of [-D,D]^dim");
  app.add_option("--fit-min-h", spec.fit_min_h, "Smallest h in the slope fit");
  app.add_option("--fit-max-h", spec.fit_max_h, "Largest h in the slope fit");
  app.add_option("--out", out, "Output path (default stdout)");
  app.add_option("--format", format, "Solve output format")->check(CLI::IsMember({"csv", "pgrid"}));
  app.add_flag("--binary", binary, "PGRID output with binary data");
  app.add_option("--rho-file", rho_file, "Solve for a density read from a PGRID file");

  auto* solve_cmd = app.add_subcommand("solve", "Solve once and write phi");
  auto* conv_cmd = app.add_subcommand("convergence", "Error against the analytic potential over --h-list");
  auto* domain_cmd = app.add_subcommand("domain", "Differences on [-1,1]^dim as the box grows to [-D,D]^dim");
  auto* threads_cmd = app.add_subcommand("threads", "Phase timings for each thread count");

  CLI11_PARSE(app, argc, argv);
  if (p_exponent) spec.differentiability = *p_exponent - 1;

  try {
    std::ostringstream text;
    if (solve_cmd->parsed()) {
      spec.kind = fsp::StudyKind::Solve;
      std::optional<fsp::GridFunction> phi;
      std::optional<fsp::PolyBump> bump;
      if (!rho_file.empty()) {
        if (spec.threads.empty() || spec.threads.front() == 0) throw fsp::ShapeError("thread count must be positive");
        phi = fsp::solve(fsp::load_pgrid(rho_file), fsp::study_config(spec, spec.threads.front())).phi;
      } else {
        const fsp::StudySpec checked = fsp::normalized(spec);
        phi = fsp::run_solve(checked).phi;
        bump = fsp::study_bump(checked);
      }
      if (format == "pgrid")
        fsp::write_pgrid(text, *phi, binary ? fsp::PgridEncoding::binary : fsp::PgridEncoding::text);
      else
        fsp::write_solution_csv(text, *phi, bump ? &*bump : nullptr, spec.rho_scale);
    } else if (conv_cmd->parsed()) {
      spec.kind = fsp::StudyKind::Convergence;
      const fsp::ConvergenceResult result = fsp::run_convergence_study(spec);
      fsp::write_convergence_csv(text, result.rows);
      if (result.slope)
        std::fprintf(stderr, "slope %.4f\n", *result.slope);
      else
        std::fprintf(stderr, "slope n/a (fewer than two h values in the fit window)\n");
    } else if (domain_cmd->parsed()) {
      spec.kind = fsp::StudyKind::Domain;
      fsp::write_domain_csv(text, fsp::run_domain_study(spec));
    } else if (threads_cmd->parsed()) {
      spec.kind = fsp::StudyKind::Threads;
      fsp::write_thread_csv(text, fsp::run_thread_benchmark(spec));
    }
    emit(out, text.str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
