#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "fsp/errors.hpp"
#include "fsp/grid.hpp"
#include "fsp/grid_io.hpp"
#include "oracles.hpp"

using namespace fsp;

TEST_SUITE("grid_core") {

TEST_CASE("node coordinates") {
  const UniformGrid g = UniformGrid::cube(1, 0.0, 1.0, 4);
  CHECK(node_coordinate(g, {0, 0, 0})[0] == 0.0);
  CHECK(node_coordinate(g, {4, 0, 0})[0] == 1.0);
  const UniformGrid h = UniformGrid::cube(1, -1.0, 1.0, 20);
  CHECK(node_coordinate(h, {5, 0, 0})[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(node_coordinate(g, {5, 0, 0}), IndexError);

  // Upper corner within one ulp even when the mesh is not exactly representable.
  const UniformGrid odd = UniformGrid::cube(1, 0.0, 1.0, 3);
  const double top = node_coordinate(odd, {3, 0, 0})[0];
  CHECK(std::abs(top - 1.0) <= std::nextafter(1.0, 2.0) - 1.0);
}

TEST_CASE("x varies along the first axis, y along the second") {
  const std::vector<double> lo{0.0, 10.0}, hi{1.0, 12.0};
  const std::vector<std::size_t> m{4, 8};
  const UniformGrid g(lo, hi, m);
  const Point p = node_coordinate(g, {1, 2, 0});
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(10.5));
  CHECK(g.mesh(0) == doctest::Approx(0.25));
  CHECK(g.mesh(1) == doctest::Approx(0.25));
}

TEST_CASE("invalid grids") {
  const std::vector<double> lo{0.0}, hi{1.0}, bad{0.0};
  const std::vector<std::size_t> one{1}, two{2};
  CHECK_THROWS_AS(UniformGrid(lo, hi, one), ShapeError);
  CHECK_THROWS_AS(UniformGrid(lo, bad, two), ShapeError);
  GridFunction f(UniformGrid::cube(2, 0, 1, 4));
  CHECK(f.values().size() == 25);
  CHECK_THROWS_AS(GridFunction(UniformGrid::cube(2, 0, 1, 4), std::vector<double>(24)), ShapeError);
}

TEST_CASE("row-major storage with x slowest") {
  const std::vector<double> lo{0, 0, 0}, hi{1, 1, 1};
  const std::vector<std::size_t> m{2, 3, 4};
  const UniformGrid g(lo, hi, m);
  CHECK(g.linear_index({1, 2, 3}) == (1 * 4 + 2) * 5 + 3);
}

TEST_CASE("max_norm_difference") {
  const UniformGrid g = UniformGrid::cube(2, 0, 1, 3);
  GridFunction f(g), z(g);
  CHECK(max_norm_difference(f, f) == 0.0);
  for (double& v : f.values()) v = 1.0;
  CHECK(max_norm_difference(f, z) == 1.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  GridFunction a(g), b(g);
  double expect = 0.0;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    a.values()[n] = u(rng);
    b.values()[n] = u(rng);
    expect = std::max(expect, std::abs(a.values()[n] - b.values()[n]));
  }
  CHECK(max_norm_difference(a, b) == expect);
  CHECK_THROWS_AS(max_norm_difference(a, GridFunction(UniformGrid::cube(2, 0, 1, 4))), ShapeError);
}

TEST_CASE("restriction") {
  const UniformGrid big = UniformGrid::cube(2, -2, 2, 40);
  const GridFunction f = GridFunction::sample(big, [](const Point& x) { return x[0] + 10 * x[1]; });
  CHECK(max_norm_difference(restrict_to_subgrid(f, big), f) == 0.0);

  const UniformGrid mid = UniformGrid::cube(2, -1, 1, 20);
  const GridFunction r = restrict_to_subgrid(f, mid);
  for (std::size_t i = 0; i <= 20; ++i)
    for (std::size_t j = 0; j <= 20; ++j) CHECK(r(i, j) == f(i + 10, j + 10));

  const UniformGrid coarse = UniformGrid::cube(2, -1, 1, 10);
  const GridFunction c = restrict_to_subgrid(f, coarse);
  for (std::size_t i = 0; i <= 10; ++i)
    for (std::size_t j = 0; j <= 10; ++j) CHECK(c(i, j) == f(10 + 2 * i, 10 + 2 * j));

  CHECK_THROWS_AS(restrict_to_subgrid(f, UniformGrid::cube(2, -1.05, 1, 20)), AlignmentError);
  CHECK_THROWS_AS(restrict_to_subgrid(f, UniformGrid::cube(2, -1, 1, 30)), AlignmentError);
  CHECK_THROWS_AS(restrict_to_subgrid(f, UniformGrid::cube(2, -3, 1, 40)), AlignmentError);
}

TEST_CASE("embed then restrict is the identity") {
  std::mt19937_64 rng(3);
  const UniformGrid small = UniformGrid::cube(3, -1, 1, 6);
  const UniformGrid big = UniformGrid::cube(3, -2, 2, 12);
  const GridFunction f = oracle::random_density(small, rng, 0);
  const GridFunction e = embed(f, big);
  CHECK(max_norm_difference(restrict_to_subgrid(e, small), f) == 0.0);
  CHECK(e(0, 0, 0) == 0.0);
  CHECK(e.max_abs() == f.max_abs());
}

TEST_CASE("boundary values round trip and consistency") {
  std::mt19937_64 rng(11);
  const std::vector<double> lo{0, 0, 0}, hi{1, 2, 3};
  const std::vector<std::size_t> m{3, 4, 5};
  const UniformGrid g(lo, hi, m);
  const GridFunction f = oracle::random_density(g, rng, 0);
  const BoundaryValues b = BoundaryValues::from_grid_function(f);
  CHECK(b.consistency_defect() == 0.0);
  const GridFunction back = b.to_grid_function();
  for (const Index& ix : oracle::all_nodes(g)) {
    if (g.is_boundary(ix)) {
      CHECK(back[ix] == f[ix]);
      CHECK(b.at(ix) == f[ix]);
    } else {
      CHECK(back[ix] == 0.0);
    }
  }
  CHECK(b.face_extents(1)[0] == 4);
  CHECK(b.face_extents(1)[1] == 6);

  BoundaryValues broken = b;
  broken.face(2, 1)[0] += 1.0;  // corner (0, 0, 5) as seen from the top z face
  CHECK(broken.consistency_defect() > 1e-3);
  CHECK_THROWS_AS(broken.check_consistency(), ShapeError);
  CHECK(max_relative_difference(b, b) == 0.0);
}

}  // TEST_SUITE

TEST_SUITE("grid_io") {

GridFunction io_sample() {
  std::mt19937_64 rng(5);
  const std::vector<double> lo{-1, 0.5}, hi{1, 2.0};
  const std::vector<std::size_t> m{3, 5};
  return oracle::random_density(UniformGrid(lo, hi, m), rng, 0);
}

TEST_CASE("text and binary round trips are exact") {
  const GridFunction f = io_sample();
  for (PgridEncoding enc : {PgridEncoding::text, PgridEncoding::binary}) {
    std::stringstream ss;
    write_pgrid(ss, f, enc);
    const GridFunction g = read_pgrid(ss);
    CHECK(g.grid() == f.grid());
    CHECK(max_norm_difference(f, g) == 0.0);
  }
}

TEST_CASE("header layout") {
  std::stringstream ss;
  write_pgrid(ss, io_sample());
  std::string line;
  std::getline(ss, line);
  CHECK(line == "PGRID 1");
  std::getline(ss, line);
  CHECK(line == "dim 2");
  std::getline(ss, line);
  CHECK(line.rfind("bounds ", 0) == 0);
  std::getline(ss, line);
  CHECK(line == "panels 3 5");
  std::getline(ss, line);
  CHECK(line == "order x y row-major");
  std::getline(ss, line);
  CHECK(line == "data text");
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS([] { std::stringstream s("PGRID 2\n"); read_pgrid(s); }(), FormatError);
  CHECK_THROWS_AS([] { std::stringstream s("PGRID 1\ndim 1\ncolour red\n"); read_pgrid(s); }(), FormatError);
  CHECK_THROWS_AS(
      [] {
        std::stringstream s("PGRID 1\ndim 1\nbounds 0 1\npanels 2\norder x row-major\ndata text\n1\n2\n");
        read_pgrid(s);
      }(),
      FormatError);
  std::stringstream ok("PGRID 1\ndim 1\nbounds 0 1\npanels 2\norder x row-major\ndata text\n1\n2\n3\n");
  CHECK(read_pgrid(ok)(1) == 2.0);
}

TEST_CASE("save and load through a file") {
  const auto path = std::filesystem::temp_directory_path() / "fsp_grid_io_test.pgrid";
  const GridFunction f = io_sample();
  save_pgrid(path, f, PgridEncoding::binary);
  CHECK(max_norm_difference(load_pgrid(path), f) == 0.0);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
