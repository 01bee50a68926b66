#include <doctest.h>

#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "fsp/kernels.hpp"

using namespace fsp::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<std::complex<double>> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::complex<double>> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference kernels") {
  const KernelTable& s = table(Isa::scalar);
  std::vector<double> in{1, 4, 9, 16, 25}, out(3);
  s.second_difference(in.data() + 1, out.data(), 3, 1, 0.5);
  CHECK(out == std::vector<double>{1.0, 1.0, 1.0});

  std::vector<std::complex<double>> a{{1, 2}}, b{{3, -1}}, c(1), acc{{1, 1}};
  s.complex_multiply(c.data(), a.data(), b.data(), 1);
  CHECK(c[0] == std::complex<double>(5, 5));
  s.complex_multiply_add(acc.data(), a.data(), b.data(), 1);
  CHECK(acc[0] == std::complex<double>(6, 6));

  std::vector<double> x{1, 2, 3}, f{2, 2, -1}, y{1, 1, 1};
  s.multiply(x.data(), f.data(), 3);
  CHECK(x == std::vector<double>{2, 4, -3});
  s.add_scaled(y.data(), x.data(), 0.5, 3);
  CHECK(y == std::vector<double>{2, 3, -0.5});
}

TEST_CASE("active table honours the CPU") {
  const KernelTable& t = active();
  CHECK(supported(t.isa));
  CHECK(supported(Isa::scalar));
  CHECK(name(Isa::scalar) == "scalar");
}

TEST_CASE("SIMD kernels are bitwise equal to the scalar reference") {
  if (!supported(Isa::avx2)) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const KernelTable& s = table(Isa::scalar);
  const KernelTable& v = table(Isa::avx2);
  std::mt19937_64 rng(42);
  // Lengths straddle the vector width so remainder loops are exercised.
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1001u}) {
    for (std::ptrdiff_t stride : {1, 3, 17}) {
      const auto in = random_vector(n + 2 * stride + 1, rng);
      std::vector<double> o1(n), o2(n);
      s.second_difference(in.data() + stride, o1.data(), n, stride, 12.5);
      v.second_difference(in.data() + stride, o2.data(), n, stride, 12.5);
      CHECK(same_bits(o1, o2));
    }
    const auto a = random_complex(n, rng), b = random_complex(n, rng);
    std::vector<std::complex<double>> c1(n), c2(n);
    s.complex_multiply(c1.data(), a.data(), b.data(), n);
    v.complex_multiply(c2.data(), a.data(), b.data(), n);
    CHECK(same_bits(c1, c2));
    s.complex_multiply_add(c1.data(), a.data(), b.data(), n);
    v.complex_multiply_add(c2.data(), a.data(), b.data(), n);
    CHECK(same_bits(c1, c2));

    auto x1 = random_vector(n, rng);
    auto x2 = x1;
    const auto f = random_vector(n, rng);
    s.multiply(x1.data(), f.data(), n);
    v.multiply(x2.data(), f.data(), n);
    CHECK(same_bits(x1, x2));
    s.add_scaled(x1.data(), f.data(), -0.3, n);
    v.add_scaled(x2.data(), f.data(), -0.3, n);
    CHECK(same_bits(x1, x2));
  }
}

}  // TEST_SUITE
