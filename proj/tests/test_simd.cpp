#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "rsm/simd.hpp"

using namespace rsm;

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen) * std::pow(10.0, 8.0 * u(gen));
  return v;
}
}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar kernels are compensated") {
    std::vector<double> xs{1e16, 1.0, -1e16, 1.0, 3.0};
    CHECK(simd::scalar::sum(xs) == 5.0);
    std::vector<double> a{1e8, 1.0, -1e8}, b{1e8, 1.0, 1e8};
    CHECK(simd::scalar::dot(a, b) == 1.0);
  }

  TEST_CASE("every ISA returns identical bits") {
    if (simd::detected_isa() != simd::Isa::avx2) return;
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 1001u, 65537u}) {
      auto x = random_values(n, 7 + static_cast<unsigned>(n));
      auto y = random_values(n, 11 + static_cast<unsigned>(n));
      CHECK(same_bits(simd::scalar::sum(x), simd::avx2::sum(x)));
      CHECK(same_bits(simd::scalar::dot(x, y), simd::avx2::dot(x, y)));
    }
  }

  TEST_CASE("dispatch follows the forced ISA") {
    auto x = random_values(999, 3);
    simd::force_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    const double s = simd::sum(x);
    simd::force_isa(simd::detected_isa());
    CHECK(same_bits(s, simd::sum(x)));
    CHECK(std::string(simd::isa_name(simd::Isa::scalar)) == "scalar");
  }

  TEST_CASE("sum agrees with a long double reference") {
    auto x = random_values(50000, 5);
    long double ref = 0.0L;
    for (double v : x) ref += v;
    CHECK(std::abs(simd::sum(x) - static_cast<double>(ref)) <= 1e-12 * std::abs(static_cast<double>(ref)) + 1e-3);
  }
}
