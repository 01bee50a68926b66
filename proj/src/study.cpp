#include "fsp/study.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fsp/errors.hpp"
#include "fsp/harmonic.hpp"

namespace fsp {

namespace {

template <typename T>
std::string describe(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void put(std::ostream& os, double v) { os << std::scientific << std::setprecision(16) << v; }

}  // namespace

StudyKind parse_study_kind(const std::string& name) {
  if (name == "solve") return StudyKind::Solve;
  if (name == "convergence") return StudyKind::Convergence;
  if (name == "domain") return StudyKind::Domain;
  if (name == "threads") return StudyKind::Threads;
  throw FormatError("unknown study kind '" + name + "'");
}

const char* study_kind_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::Solve: return "solve";
    case StudyKind::Convergence: return "convergence";
    case StudyKind::Domain: return "domain";
    case StudyKind::Threads: return "threads";
  }
  return "?";
}

std::vector<double> default_bump_center(int dim) {
  const std::vector<double> a{1.0 / std::sqrt(31.0), 0.2, 0.1};
  return {a.begin(), a.begin() + std::clamp(dim, 0, 3)};
}

UniformGrid study_grid(const StudySpec& spec, double h) {
  if (!(h > 0.0)) throw ShapeError("mesh width h must be positive, got " + describe(h));
  std::vector<double> lower(spec.dim), upper(spec.dim);
  std::vector<std::size_t> panels(spec.dim);
  for (int s = 0; s < spec.dim; ++s) {
    lower[s] = spec.domain[2 * s];
    upper[s] = spec.domain[2 * s + 1];
    const double count = std::round((upper[s] - lower[s]) / h);
    if (count < 1.0 || std::abs(count * h - (upper[s] - lower[s])) > 1e-9 * h)
      throw ShapeError("h = " + describe(h) + " does not divide the side [" + describe(lower[s]) + ", " +
                       describe(upper[s]) + "] into whole panels");
    panels[s] = static_cast<std::size_t>(count);
  }
  return UniformGrid(lower, upper, panels);
}

UniformGrid study_grid(const StudySpec& spec) {
  if (spec.panels.empty()) return study_grid(spec, spec.h_list.front());
  std::vector<double> lower(spec.dim), upper(spec.dim);
  std::vector<std::size_t> panels(spec.dim);
  for (int s = 0; s < spec.dim; ++s) {
    lower[s] = spec.domain[2 * s];
    upper[s] = spec.domain[2 * s + 1];
    panels[s] = spec.panels.size() == 1 ? spec.panels[0] : spec.panels[s];
  }
  return UniformGrid(lower, upper, panels);
}

PolyBump study_bump(const StudySpec& spec) {
  return PolyBump::with_differentiability(spec.dim, spec.epsilon, spec.differentiability, spec.center);
}

SolverConfig study_config(const StudySpec& spec, unsigned threads) {
  SolverConfig config;
  config.order = spec.order;
  config.padding_panels = spec.padding_panels;
  config.fft_friendly_expansion = spec.fft_friendly_expansion;
  config.thread_count = threads;
  return config;
}

StudySpec normalized(const StudySpec& in) {
  StudySpec spec = in;
  if (spec.dim < 1 || spec.dim > 3) throw ShapeError("dim must be 1, 2 or 3");
  if (spec.domain.empty())
    for (int s = 0; s < spec.dim; ++s) spec.domain.insert(spec.domain.end(), {-1.0, 1.0});
  if (spec.domain.size() != static_cast<std::size_t>(2 * spec.dim))
    throw ShapeError("--domain needs " + describe(2 * spec.dim) + " values for dim " + describe(spec.dim));
  for (int s = 0; s < spec.dim; ++s)
    if (!(spec.domain[2 * s] < spec.domain[2 * s + 1])) throw ShapeError("domain side " + describe(s) + " is empty");
  if (spec.center.empty()) spec.center = default_bump_center(spec.dim);
  if (spec.center.size() != static_cast<std::size_t>(spec.dim))
    throw ShapeError("--center needs " + describe(spec.dim) + " values");
  if (spec.order != 4 && spec.order != 6) throw ShapeError("order must be 4 or 6");
  if (spec.differentiability < 0) throw ShapeError("differentiability must be nonnegative");
  if (!(spec.epsilon > 0.0)) throw ShapeError("eps must be positive");
  if (spec.panels.size() > 1 && spec.panels.size() != static_cast<std::size_t>(spec.dim))
    throw ShapeError("--panels takes one value or one per axis");
  for (double h : spec.h_list)
    if (!(h > 0.0)) throw ShapeError("h values must be positive");
  for (unsigned t : spec.threads)
    if (t == 0) throw ShapeError("thread counts must be positive");

  switch (spec.kind) {
    case StudyKind::Convergence:
      if (spec.h_list.empty()) throw ShapeError("convergence study needs a nonempty --h-list");
      break;
    case StudyKind::Domain:
      if (spec.d_list.empty()) throw ShapeError("domain study needs a nonempty --d-list");
      [[fallthrough]];
    case StudyKind::Solve:
    case StudyKind::Threads:
      if (spec.panels.empty() && spec.h_list.empty()) throw ShapeError("give --panels or --h-list");
      if (spec.threads.empty()) throw ShapeError("thread list must be nonempty");
      break;
  }

  // Support of the bump must stay off the boundary of the domain actually solved on.
  if (spec.padding_panels == 0)
    for (int s = 0; s < spec.dim; ++s)
      if (spec.center[s] - spec.epsilon < spec.domain[2 * s] || spec.center[s] + spec.epsilon > spec.domain[2 * s + 1])
        throw SupportError("bump support leaves the domain along axis " + describe(s) +
                           "; enlarge the domain or add --padding-panels");

  std::vector<UniformGrid> grids;
  if (spec.kind == StudyKind::Convergence)
    for (double h : spec.h_list) grids.push_back(study_grid(spec, h));
  else
    grids.push_back(study_grid(spec));
  if (spec.kind == StudyKind::Domain)
    for (double d : spec.d_list) grids.push_back(extended_grid(grids.front(), d));

  const std::size_t minimum = spec.dim == 1 ? 1 : spec.order == 6 ? kSixthOrderMinPanels : 4;
  for (const UniformGrid& g : grids) {
    const UniformGrid padded = pad_domain(g, study_config(spec, 1));
    for (int s = 0; s < spec.dim; ++s)
      if (padded.panels(s) < minimum)
        throw ShapeError("grid with " + describe(padded.panels(s)) + " panels on axis " + describe(s) +
                         " is too coarse for order " + describe(spec.order) + " (need " + describe(minimum) + ")");
    if (padded.node_count() > kMaxStudyNodes)
      throw ShapeError("grid with " + describe(padded.node_count()) + " nodes exceeds the study limit of " +
                       describe(kMaxStudyNodes));
  }
  return spec;
}

double max_relative_error(const GridFunction& phi, const PolyBump& bump, double scale) {
  const GridFunction exact = GridFunction::sample(phi.grid(), [&](const Point& x) { return scale * bump.potential(x); });
  return max_norm_difference(phi, exact) / exact.max_abs();
}

std::optional<double> fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& err,
                                       std::optional<double> min_h, std::optional<double> max_h) {
  if (h.size() != err.size()) throw ShapeError("slope fit needs one error per h");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (min_h && h[i] < *min_h * (1.0 - 1e-9)) continue;
    if (max_h && h[i] > *max_h * (1.0 + 1e-9)) continue;
    if (!(err[i] > 0.0)) continue;
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

ConvergenceResult run_convergence_study(const StudySpec& in) {
  const StudySpec spec = normalized(in);
  const PolyBump bump = study_bump(spec);
  const SolverConfig config = study_config(spec, spec.threads.front());
  ConvergenceResult result;
  std::vector<double> hs, errs;
  for (double h : spec.h_list) {
    const UniformGrid grid = study_grid(spec, h);
    const double scale = spec.rho_scale;
    const SolveResult solved = solve([&](const Point& x) { return scale * bump(x); }, grid, config);
    ConvergenceRow row;
    row.h = h;
    row.panels = grid.panels(0);
    row.order = spec.order;
    row.differentiability = spec.differentiability;
    row.max_rel_err = max_relative_error(solved.phi, bump, scale);
    row.timings = solved.report.timings;
    result.rows.push_back(row);
    hs.push_back(h);
    errs.push_back(row.max_rel_err);
  }
  result.slope = fit_loglog_slope(hs, errs, spec.fit_min_h, spec.fit_max_h);
  return result;
}

std::vector<DomainStudyRow> run_domain_study(const StudySpec& in) {
  const StudySpec spec = normalized(in);
  const PolyBump bump = study_bump(spec);
  const double scale = spec.rho_scale;
  return domain_invariance_study([&](const Point& x) { return scale * bump(x); }, study_grid(spec), spec.d_list,
                                 study_config(spec, spec.threads.front()));
}

std::vector<ThreadRow> run_thread_benchmark(const StudySpec& in) {
  const StudySpec spec = normalized(in);
  const PolyBump bump = study_bump(spec);
  const UniformGrid grid = study_grid(spec);
  const double scale = spec.rho_scale;
  auto run = [&](unsigned threads) {
    return solve([&](const Point& x) { return scale * bump(x); }, grid, study_config(spec, threads));
  };
  const SolveResult reference = run(1);
  std::vector<ThreadRow> rows;
  for (unsigned t : spec.threads) {
    const SolveResult result = t == 1 ? reference : run(t);
    const auto a = reference.phi.values(), b = result.phi.values();
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end()))
      throw Error("phi with " + describe(t) + " threads differs from the single-thread result");
    ThreadRow row;
    row.threads = t;
    row.timings = result.report.timings;
    row.speedup = t == 1 ? 1.0 : reference.report.timings.total() / row.timings.total();
    rows.push_back(row);
  }
  return rows;
}

SolveResult run_solve(const StudySpec& in) {
  const StudySpec spec = normalized(in);
  const PolyBump bump = study_bump(spec);
  const double scale = spec.rho_scale;
  return solve([&](const Point& x) { return scale * bump(x); }, study_grid(spec),
               study_config(spec, spec.threads.front()));
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "h,panels,order,diff,max_rel_err,t_phistar_s,t_boundary_s,t_harmonic_s\n";
  for (const ConvergenceRow& r : rows) {
    put(os, r.h);
    os << ',' << r.panels << ',' << r.order << ',' << r.differentiability << ',';
    put(os, r.max_rel_err);
    os << ',';
    put(os, r.timings.phi_star_s);
    os << ',';
    put(os, r.timings.boundary_s);
    os << ',';
    put(os, r.timings.harmonic_s);
    os << '\n';
  }
}

void write_domain_csv(std::ostream& os, const std::vector<DomainStudyRow>& rows) {
  os << "D,max_rel_diff\n";
  for (const DomainStudyRow& r : rows) {
    put(os, r.extent);
    os << ',';
    put(os, r.max_relative_difference);
    os << '\n';
  }
}

void write_thread_csv(std::ostream& os, const std::vector<ThreadRow>& rows) {
  os << "threads,t_phistar_s,t_boundary_s,t_harmonic_s,t_total_s,speedup\n";
  for (const ThreadRow& r : rows) {
    os << r.threads << ',';
    put(os, r.timings.phi_star_s);
    os << ',';
    put(os, r.timings.boundary_s);
    os << ',';
    put(os, r.timings.harmonic_s);
    os << ',';
    put(os, r.timings.total());
    os << ',';
    put(os, r.speedup);
    os << '\n';
  }
}

void write_solution_csv(std::ostream& os, const GridFunction& phi, const PolyBump* bump, double scale) {
  static const char* names[] = {"x", "y", "z"};
  const UniformGrid& g = phi.grid();
  for (int s = 0; s < g.dim(); ++s) os << names[s] << ',';
  os << "phi" << (bump ? ",exact" : "") << '\n';
  const Extents n = g.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k) {
        const Point x = g.point({i, j, k});
        for (int s = 0; s < g.dim(); ++s) {
          put(os, x[s]);
          os << ',';
        }
        put(os, phi(i, j, k));
        if (bump) {
          os << ',';
          put(os, scale * bump->potential(x));
        }
        os << '\n';
      }
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + temp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(temp);
      throw Error("failed writing " + temp.string());
    }
  }
  std::filesystem::rename(temp, target);
}

}  // namespace fsp
