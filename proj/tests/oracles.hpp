#pragma once

// Slow, independent reference computations used by the unit and acceptance tests.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "fsp/greens.hpp"
#include "fsp/grid.hpp"

namespace oracle {

using fsp::Extents;
using fsp::GridFunction;
using fsp::Index;
using fsp::UniformGrid;

inline std::vector<Index> all_nodes(const UniformGrid& g) {
  std::vector<Index> out;
  const Extents n = g.extents();
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k) out.push_back({i, j, k});
  return out;
}

inline std::vector<Index> interior_nodes(const UniformGrid& g) {
  std::vector<Index> out;
  for (const Index& ix : all_nodes(g))
    if (!g.is_boundary(ix)) out.push_back(ix);
  return out;
}

// Weights of the compact operator sum_s D2_s + sum_{r<s} (h_r^2 + h_s^2)/12 D2_r D2_s,
// written out as a 3^dim stencil keyed by the offset per axis.
inline std::map<std::array<int, 3>, double> compact_stencil(const UniformGrid& g) {
  const int dim = g.dim();
  auto d2 = [](int o) { return o == 0 ? -2.0 : 1.0; };
  std::map<std::array<int, 3>, double> w;
  for (int s = 0; s < dim; ++s)
    for (int o = -1; o <= 1; ++o) {
      std::array<int, 3> off{0, 0, 0};
      off[s] = o;
      w[off] += d2(o) / (g.mesh(s) * g.mesh(s));
    }
  for (int r = 0; r < dim; ++r)
    for (int s = r + 1; s < dim; ++s) {
      const double hr = g.mesh(r), hs = g.mesh(s);
      const double c = (hr * hr + hs * hs) / 12.0;
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
          std::array<int, 3> off{0, 0, 0};
          off[r] = a;
          off[s] = b;
          w[off] += c * d2(a) * d2(b) / (hr * hr * hs * hs);
        }
    }
  return w;
}

// Dense rows of the compact operator: one row per interior node, one column per node.
inline Eigen::MatrixXd dense_compact_operator(const UniformGrid& g) {
  const auto nodes = all_nodes(g);
  const auto interior = interior_nodes(g);
  const auto w = compact_stencil(g);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(interior.size(), nodes.size());
  for (std::size_t r = 0; r < interior.size(); ++r)
    for (const auto& [off, c] : w) {
      Index t = interior[r];
      for (int s = 0; s < 3; ++s) t[s] = static_cast<std::size_t>(static_cast<long>(t[s]) + off[s]);
      a(r, g.linear_index(t)) += c;
    }
  return a;
}

// Solution of the compact system with Dirichlet data taken from the boundary of `g_full`,
// by dense LU on the interior block.
inline GridFunction dense_harmonic_solve(const GridFunction& g_full) {
  const UniformGrid& g = g_full.grid();
  const Eigen::MatrixXd a = dense_compact_operator(g);
  const auto nodes = all_nodes(g);
  const auto interior = interior_nodes(g);
  Eigen::MatrixXd aii(interior.size(), interior.size());
  for (std::size_t c = 0; c < interior.size(); ++c) aii.col(c) = a.col(g.linear_index(interior[c]));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(interior.size());
  for (const Index& ix : nodes)
    if (g.is_boundary(ix)) rhs -= a.col(g.linear_index(ix)) * g_full[ix];
  const Eigen::VectorXd u = aii.partialPivLu().solve(rhs);
  GridFunction out = g_full;
  for (std::size_t c = 0; c < interior.size(); ++c) out[interior[c]] = u[c];
  return out;
}

// Discrete sine mode prod_s sin(k_s pi i_s / M_s) sampled at every node.
inline GridFunction sine_mode(const UniformGrid& g, const std::array<std::size_t, 3>& k) {
  GridFunction f(g);
  for (const Index& ix : all_nodes(g)) {
    double v = 1.0;
    for (int s = 0; s < g.dim(); ++s)
      v *= std::sin(std::numbers::pi * static_cast<double>(k[s] * ix[s]) / static_cast<double>(g.panels(s)));
    f[ix] = v;
  }
  return f;
}

// Direct double loop: out[j] = sum_q kernel[j + first - q] data[q].
inline std::vector<double> direct_convolution(const std::vector<double>& kernel, const std::vector<double>& data,
                                              std::size_t first, std::size_t count) {
  std::vector<double> out(count, 0.0);
  for (std::size_t j = 0; j < count; ++j)
    for (std::size_t q = 0; q < data.size(); ++q) {
      const long n = static_cast<long>(j + first) - static_cast<long>(q);
      if (n >= 0 && n < static_cast<long>(kernel.size())) out[j] += kernel[n] * data[q];
    }
  return out;
}

// Boundary value at one node: trapezoidal sum written from scratch with the Euclidean distance.
inline double direct_boundary_value(const GridFunction& rho, const Index& target) {
  const UniformGrid& g = rho.grid();
  const fsp::Point x = g.point(target);
  double sum = 0.0;
  for (const Index& ix : interior_nodes(g)) {
    const double v = rho[ix];
    if (v == 0.0) continue;
    const fsp::Point y = g.point(ix);
    double r2 = 0.0;
    for (int s = 0; s < g.dim(); ++s) r2 += (x[s] - y[s]) * (x[s] - y[s]);
    sum += fsp::green_value(g.dim(), std::sqrt(r2)) * v;
  }
  return sum * g.cell_volume();
}

// Random values on nodes at least `collar` nodes from the boundary, zero elsewhere.
inline GridFunction random_density(const UniformGrid& g, std::mt19937_64& rng, std::size_t collar = 2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GridFunction f(g);
  for (const Index& ix : all_nodes(g)) {
    bool inside = true;
    for (int s = 0; s < g.dim(); ++s)
      inside = inside && ix[s] >= collar && ix[s] + collar <= g.panels(s);
    f[ix] = inside ? u(rng) : 0.0;
  }
  return f;
}

// Least-squares slope of log(e) against log(h).
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& e) {
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double re_z_power(double x, double y, int n) {
  std::complex<double> z(x, y), p(1.0, 0.0);
  for (int i = 0; i < n; ++i) p *= z;
  return p.real();
}

}  // namespace oracle
