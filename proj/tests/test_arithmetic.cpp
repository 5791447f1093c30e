#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rsm/arithmetic.hpp"

using namespace rsm;

TEST_SUITE("arithmetic") {
  TEST_CASE("integer utilities") {
    CHECK(gcd(84, -36) == 12);
    CHECK(mod(-7, 5) == 3);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(4, 8), Error);
    CHECK(ipow(3, 5) == 243);
    CHECK(euler_phi(36) == 12);
    CHECK(divisor_count(360) == 24);
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
    auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::int64_t, int>{2, 3});
  }

  TEST_CASE("prime sieve") {
    PrimeSieve s(100);
    CHECK(s.primes().size() == 25);
    CHECK(s.spf(91) == 7);
    CHECK(s.is_prime(97));
    CHECK_FALSE(s.is_prime(1));
  }

  TEST_CASE("character enumeration") {
    CHECK(all_characters(12).size() == 4);
    CHECK(primitive_even_characters(1).size() == 1);
    CHECK(primitive_even_characters(4).empty());
    CHECK(primitive_even_characters(8).size() == 1);
    for (int N : {5, 7, 8, 13}) {
      for (const auto& chi : primitive_even_characters(N)) {
        CHECK(is_primitive(chi));
        CHECK(is_even(chi));
        CHECK(std::abs(chi(N - 1) - 1.0) < 1e-14);
      }
    }
    for (const auto& chi : all_characters(15))
      for (int a = 0; a < 15; ++a)
        for (int b = 0; b < 15; ++b) CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
  }

  TEST_CASE("Kloosterman sums") {
    CHECK(kloosterman_trivial(1, 1, 7) == doctest::Approx(2.04891733952230531352).epsilon(1e-13));
    CHECK(kloosterman_trivial(1, 1, 1) == 1.0);
    const auto triv = PrimitiveCharacter::trivial();
    for (int c = 1; c <= 30; ++c) {
      const double s = kloosterman_trivial(3, 5, c);
      CHECK(std::abs(kloosterman(triv, 3, 5, c) - s) < 1e-11);
      CHECK(std::abs(s) <= divisor_count(c) * std::sqrt(static_cast<double>(gcd(15, c) * c)) + 1e-9);
    }
    CHECK(std::abs(kloosterman_trivial(2, 3, 10) - kloosterman_trivial(3, 2, 10)) < 1e-12);
  }

  TEST_CASE("Eisenstein eigenvalues") {
    EisensteinEigenvalues e0(0.0);
    for (int n = 1; n <= 60; ++n) CHECK(e0(n) == doctest::Approx(divisor_count(n)));
    const double r = 0.7;
    CHECK(eisenstein_lambda(r, 6) == doctest::Approx(eisenstein_lambda(r, 2) * eisenstein_lambda(r, 3)));
    CHECK(eisenstein_lambda(r, 2) == doctest::Approx(2.0 * std::cos(r * std::log(2.0))));
    auto t = EisensteinEigenvalues(r).table(100);
    for (int n = 1; n <= 100; ++n) CHECK(t[n] == doctest::Approx(eisenstein_lambda(r, n)).epsilon(1e-12));
  }

  TEST_CASE("local factorization of the Xi inner sum") {
    for (int N : {1, 5, 8}) {
      for (const auto& chi : primitive_even_characters(N))
        for (int sign : {1, -1})
          for (int d1 = 1; d1 <= 3; ++d1)
            for (int d2 = 1; d2 <= 3; ++d2)
              for (int h = 1; h <= 4; ++h)
                for (int g = 1; g <= 8; ++g) {
                  if (gcd(d1, d2) != 1 || gcd(d1 * d2, N) != 1 || gcd(g, d1 * d2) != 1 || (g * h) % N) continue;
                  CHECK(std::abs(xi_inner_sum(d1, d2, g, h, chi, sign) - xi_inner_sum_local(d1, d2, g, h, chi, sign)) <
                        1e-9);
                }
    }
  }

  TEST_CASE("Xi closed form matches a small truncation") {
    const auto chi = PrimitiveCharacter::trivial();
    const cplx s(1.5, 0.0);
    auto brute = xi_bruteforce(s, 0.3, chi, 1, 1000);
    CHECK(std::abs(brute.value - xi_closed(s, 0.3, chi, 1)) < 1e-2);
    CHECK(brute.tuples > 0);
  }
}
