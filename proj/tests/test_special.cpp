#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rsm/special.hpp"

using namespace rsm;

namespace {
bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
}  // namespace

TEST_SUITE("special") {
  TEST_CASE("log Gamma, Gamma and digamma") {
    CHECK(near(log_gamma({3.0, 4.0}), {-1.75662678460378411053, 4.74266443803465792819}, 1e-13));
    CHECK(near(gamma_complex(-2.5), -0.945308720482941881225689324449, 1e-13));
    CHECK(near(digamma({2.0, 1.0}), {0.594650320622476977272, 0.576674047468581174134}, 1e-13));
    CHECK(near(gamma_complex(5.0), 24.0, 1e-14));
  }

  TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(1) == mpq_class(1, 2));
    CHECK(bernoulli(12) == mpq_class(-691, 2730));
    CHECK(bernoulli(7) == 0);
    CHECK(bernoulli_double(2) == doctest::Approx(1.0 / 6.0));
  }

  TEST_CASE("zeta, Hurwitz and Dirichlet L") {
    CHECK(near(zeta(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-14));
    CHECK(near(zeta({0.5, 14.0}), {0.0222411426099935892462, -0.103258123266450057902}, 1e-12));
    CHECK(near(zeta(-3.5), 0.00444101133547943195853465801782, 1e-12));
    CHECK(near(zeta({1.0, 2.0}), {0.598165569762381736703, -0.351854745217845290497}, 1e-13));
    CHECK(near(hurwitz(3.0, 0.3), 37.6362682943630194586501536605, 1e-13));
    CHECK(near(hurwitz({0.7, 1.3}, 0.25), {-0.5309686371974002337570969, 1.804564151771267551850925}, 1e-12));
    CHECK(std::isfinite(hurwitz_regular(1.0, 0.5).real()));
    auto chis = primitive_even_characters(5);
    REQUIRE(chis.size() == 1);
    CHECK(near(dirichlet_l({1.0, 0.5}, chis[0]), {0.4519591398246515619263445, 0.1781357397444298081174959}, 1e-12));
  }

  TEST_CASE("Bessel functions") {
    CHECK(bessel_eval(BesselKind::J, BesselOrder::integer(11), 20.0) == doctest::Approx(0.0613563033759509255533).epsilon(1e-13));
    CHECK(bessel_j_imag_order_im(2.0, 5.0) == doctest::Approx(-2.43341284810516903212).epsilon(1e-12));
    CHECK(bessel_j_imag_order_im(2.0, 30.0) == doctest::Approx(-1.28381038597706002400).epsilon(1e-12));
    CHECK(bessel_k_imag_order(2.0, 1.5) == doctest::Approx(0.0693318572126196319279).epsilon(1e-12));
    CHECK(bessel_eval(BesselKind::K, BesselOrder::imaginary(1.0), 7.0) ==
          doctest::Approx(0.0003972433798164556706398).epsilon(1e-11));
    CHECK(bessel_eval(BesselKind::Y, BesselOrder::imaginary(2.0), 3.0) ==
          doctest::Approx(9.753376486493917609739071).epsilon(1e-12));
  }

  TEST_CASE("imaginary order J on both sides of the method switch") {
    CHECK(bessel_j_imag_order_im(3.0, 19.99) == doctest::Approx(1.22535976497176).epsilon(1e-11));
    CHECK(bessel_j_imag_order_im(3.0, 20.01) == doctest::Approx(1.42262797994158).epsilon(1e-11));
  }

  TEST_CASE("Hurwitz zeta left of the critical strip") {
    CHECK(near(hurwitz({-1.5, 2.0}, 0.3), {-0.10410506269402, -0.105470521937221}, 1e-11));
    CHECK(near(hurwitz({-3.5, 2.0}, 0.3), {0.0421959242889788, -0.0132369910848138}, 1e-9));
    CHECK(near(zeta({-3.5, 1.0}), {0.00455067148380678, 0.0123444569328555}, 1e-12));
  }

  TEST_CASE("Bessel average residual is bounded") {
    auto h = SmoothWindow::bump();
    for (double K : {8.0, 16.0}) {
      auto avg = bessel_weight_average(h, K, 200.0);
      CHECK(std::abs(avg.residual) <= 10.0 * avg.error_scale);
      CHECK(avg.terms > 0);
    }
  }
}
