#include <doctest.h>

#include <cmath>

#include "rsm/voronoi.hpp"

using namespace rsm;

TEST_SUITE("voronoi") {
  TEST_CASE("Estermann series in the region of absolute convergence") {
    const cplx expected(-0.876897439182454755711185715155, 0.283686405585718983499414943954);
    CHECK(std::abs(estermann_eval(0.5, 2, 5, {2.0, 1.0}, {}, EstermannRoute::direct) - expected) < 1e-10);
    CHECK(std::abs(estermann_eval(0.5, 2, 5, {2.0, 1.0}, {}, EstermannRoute::hurwitz) - expected) < 1e-10);
    CHECK(std::abs(estermann_eval(0.0, 1, 1, 3.0) - zeta(3.0) * zeta(3.0)) < 1e-12);
  }

  TEST_CASE("Estermann continuation left of the critical strip") {
    const cplx expected(-0.118591533310595926767382296694, 0.0763058912784399494280096815191);
    CHECK(std::abs(estermann_eval(0.0, 1, 3, {-0.5, 0.5}) - expected) < 1e-10);
    CHECK(std::abs(estermann_eval(0.0, 1, 3, {-0.5, 0.5}, {}, EstermannRoute::functional_equation) - expected) < 1e-9);
  }

  TEST_CASE("double reflection is the identity") {
    for (int k = 0; k < 4; ++k) {
      const cplx s(-0.5, -1.5 + k);
      const cplx d = estermann_eval(0.5, 2, 5, s);
      CHECK(std::abs(d - estermann_double_reflection(0.5, 2, 5, s)) < 1e-8 * std::max(1.0, std::abs(d)));
    }
  }

  TEST_CASE("residues at 1 +- ir") {
    for (int c : {1, 3}) {
      const double r = 0.5;
      for (int sgn : {1, -1}) {
        const cplx s(1.0, sgn * r);
        const cplx expected = zeta(cplx(1.0, 2 * sgn * r)) * std::exp(-cplx(1.0, 2 * sgn * r) * std::log(double(c)));
        CHECK(std::abs(estermann_residue(r, 1, c, s) - expected) < 1e-6);
      }
    }
  }

  TEST_CASE("arguments are validated") {
    CHECK_THROWS_AS(estermann_eval(0.5, 2, 4, 2.0), Error);
    CHECK_THROWS_AS(estermann_eval(0.5, 1, 0, 2.0), Error);
  }

  TEST_CASE("Hankel transforms") {
    auto F = SmoothWindow::bump();
    for (int j : {0, 2, 4})
      CHECK(std::abs(hankel_transform(F, HankelKernel::J(0), 5.0, {}, j).value - 0.00121585462859143285369864530824) < 1e-14);
    CHECK(std::abs(hankel_transform(F, HankelKernel::k_imag(2.0), 20.0).value - 7.39821717533083657282629380994e-14) < 1e-20);
    for (double alpha : {20.0, 80.0, 320.0}) {
      auto h = hankel_transform(F, HankelKernel::J(0), alpha);
      CHECK(std::abs(h.value) <= hankel_decay_bound(F, HankelKernel::J(0), alpha) * (1 + 1e-9) + 1e-15);
    }
  }

  TEST_CASE("kernels of the summation formula") {
    CHECK(voronoi_kernels(FormKernel::holomorphic(12), -1).empty());
    CHECK(voronoi_kernels(FormKernel::holomorphic(12), 1).size() == 1);
    CHECK_FALSE(voronoi_kernels(FormKernel::spectral(1.0), 1).empty());
    CHECK_FALSE(voronoi_kernels(FormKernel::spectral(1.0), -1).empty());
  }

  TEST_CASE("summation formula for the divisor function") {
    VoronoiInstance inst{FixedForm::eisenstein(0.0), 1, 1, SmoothWindow::bump(0.5, 2.5, true, 16.0)};
    const cplx lhs = voronoi_lhs(inst);
    const auto rhs = voronoi_rhs_detail(inst);
    CHECK(std::abs(lhs - rhs.value) < 1e-8);
    CHECK(rhs.polar != 0.0);
  }

  TEST_CASE("instances are validated") {
    VoronoiInstance bad{FixedForm::eisenstein(0.0), 2, 4, SmoothWindow::bump()};
    CHECK_THROWS_AS(bad.validate(), Error);
  }
}
