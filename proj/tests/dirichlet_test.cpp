#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fsp/dirichlet_poisson.hpp"
#include "fsp/errors.hpp"
#include "oracles.hpp"

using namespace fsp;

TEST_SUITE("dirichlet_poisson") {

TEST_CASE("eigenvalue table") {
  const std::vector<double> lo{0, -1}, hi{2, 2};
  const std::vector<std::size_t> m{4, 6};
  const ContinuousEigenvalueTable t(UniformGrid(lo, hi, m));
  const double pi = std::numbers::pi;
  CHECK(t.values.size() == 15);
  CHECK(t.values[0] == doctest::Approx(-(pi * pi / 4 + pi * pi / 9)).epsilon(1e-15));
  // k = (2, 3): x-slowest, 5 modes per row
  CHECK(t.values[1 * 5 + 2] == doctest::Approx(-(4 * pi * pi / 4 + 9 * pi * pi / 9)).epsilon(1e-15));
  for (double v : t.values) CHECK(v < 0.0);
}

TEST_CASE("single sine mode is solved exactly") {
  const double pi = std::numbers::pi;
  const std::vector<double> lo{-1, 0.5}, hi{1, 2};
  const std::vector<std::size_t> m{12, 9};
  const UniformGrid g(lo, hi, m);
  const double lam = (pi / 2) * (pi / 2) + (pi / 1.5) * (pi / 1.5);
  auto mode = [&](const Point& x) { return std::sin(pi * (x[0] + 1) / 2) * std::sin(pi * (x[1] - 0.5) / 1.5); };
  const GridFunction rho = GridFunction::sample(g, [&](const Point& x) { return -lam * mode(x); });
  const GridFunction phi = solve_phi_star(rho);
  CHECK(max_norm_difference(phi, GridFunction::sample(g, mode)) < 1e-13);

  const UniformGrid g3 = UniformGrid::cube(3, 0, 1, 8);
  auto mode3 = [&](const Point& x) { return std::sin(2 * pi * x[0]) * std::sin(pi * x[1]) * std::sin(3 * pi * x[2]); };
  const GridFunction rho3 = GridFunction::sample(g3, [&](const Point& x) { return -14 * pi * pi * mode3(x); });
  CHECK(max_norm_difference(solve_phi_star(rho3), GridFunction::sample(g3, mode3)) < 1e-13);

  const UniformGrid g1 = UniformGrid::cube(1, 0, 1, 7);
  const GridFunction rho1 = GridFunction::sample(g1, [&](const Point& x) { return -9 * pi * pi * std::sin(3 * pi * x[0]); });
  CHECK(std::abs(solve_phi_star(rho1)(2) - std::sin(3 * pi * 2 / 7.0)) < 1e-13);
}

TEST_CASE("zero density") {
  const UniformGrid g = UniformGrid::cube(2, 0, 1, 6);
  CHECK(solve_phi_star(GridFunction(g)).max_abs() == 0.0);
}

TEST_CASE("random density matches the mode-by-mode series") {
  std::mt19937_64 rng(33);
  const double pi = std::numbers::pi;
  const std::vector<double> lo{0, -1}, hi{1, 1};
  const std::vector<std::size_t> m{5, 6};
  const UniformGrid g(lo, hi, m);
  const GridFunction rho = oracle::random_density(g, rng, 1);
  const GridFunction phi = solve_phi_star(rho);
  const auto interior = oracle::interior_nodes(g);
  GridFunction want(g);
  for (std::size_t a = 1; a < 5; ++a)
    for (std::size_t b = 1; b < 6; ++b) {
      double beta = 0.0;
      for (const Index& ix : interior)
        beta += rho[ix] * std::sin(a * pi * ix[0] / 5.0) * std::sin(b * pi * ix[1] / 6.0);
      beta *= (2.0 / 1.0) * g.mesh(0) * (2.0 / 2.0) * g.mesh(1);
      const double alpha = -beta / (a * a * pi * pi / 1.0 + b * b * pi * pi / 4.0);
      for (const Index& ix : interior)
        want[ix] += alpha * std::sin(a * pi * ix[0] / 5.0) * std::sin(b * pi * ix[1] / 6.0);
    }
  CHECK(max_norm_difference(phi, want) <= 1e-13 * want.max_abs());
  for (const Index& ix : oracle::all_nodes(g))
    if (g.is_boundary(ix)) CHECK(phi[ix] == 0.0);
}

TEST_CASE("linear in rho") {
  std::mt19937_64 rng(4);
  const UniformGrid g = UniformGrid::cube(3, -1, 1, 9);
  const GridFunction a = oracle::random_density(g, rng, 1), b = oracle::random_density(g, rng, 1);
  GridFunction sum = a;
  sum += b;
  GridFunction split = solve_phi_star(a);
  split += solve_phi_star(b);
  const GridFunction joint = solve_phi_star(sum);
  CHECK(max_norm_difference(split, joint) <= 1e-13 * joint.max_abs());
}

TEST_CASE("boundary support check") {
  const UniformGrid g = UniformGrid::cube(2, 0, 1, 6);
  GridFunction rho(g);
  rho(3, 3) = 1.0;
  CHECK_NOTHROW(check_boundary_support(rho));
  rho(0, 2) = 1e-15;
  CHECK_NOTHROW(check_boundary_support(rho));
  rho(0, 2) = 1e-10;
  CHECK_THROWS_AS(check_boundary_support(rho), SupportError);
  CHECK_THROWS_AS(solve_phi_star(rho), SupportError);
}

}  // TEST_SUITE
