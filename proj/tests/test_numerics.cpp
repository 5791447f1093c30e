#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rsm/numerics.hpp"

using namespace rsm;

namespace {
constexpr double pi = std::numbers::pi;
// Mass of exp(-1/((x-1)(2-x))) on [1,2].
constexpr double bump_mass = 0.00702985840660965623924127052986;
}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("compact integral of a polynomial is exact") {
    PrecisionCtx ctx;
    auto r = integrate_compact([](double x) { return x * x * x - 2.0 * x; }, 0.0, 3.0, ctx);
    CHECK(r.value == doctest::Approx(81.0 / 4.0 - 9.0).epsilon(1e-14));
  }

  TEST_CASE("adaptive integral of an oscillatory integrand") {
    PrecisionCtx ctx;
    ctx.target_tol = 1e-12;
    auto r = integrate_compact([](double x) { return std::cos(40.0 * x); }, 0.0, 2.0, ctx);
    CHECK(std::abs(r.value - std::sin(80.0) / 40.0) < 1e-11);
    CHECK(r.error < 1e-10);
  }

  TEST_CASE("half line and real line integrals") {
    PrecisionCtx ctx;
    ctx.target_tol = 1e-12;
    auto h = integrate_half_line([](double x) { return std::exp(-x); }, 0.0, ctx);
    CHECK(std::abs(h.value - 1.0) < 1e-10);
    auto g = integrate_real_line([](double x) { return std::exp(-x * x); }, ctx);
    CHECK(std::abs(g.value - std::sqrt(pi)) < 1e-10);
  }

  TEST_CASE("complex integrands") {
    PrecisionCtx ctx;
    auto r = integrate_compact([](double x) { return std::exp(cplx(0.0, x)); }, 0.0, pi, ctx);
    CHECK(std::abs(r.value - cplx(0.0, 2.0)) < 1e-12);
  }

  TEST_CASE("bump mass and unit normalization") {
    PrecisionCtx ctx;
    ctx.target_tol = 1e-16;
    auto w = SmoothWindow::bump();
    auto m = integrate_compact([&](double x) { return w(x); }, 1.0, 2.0, ctx, 4);
    CHECK(std::abs(m.value - bump_mass) < 1e-15);
    auto u = SmoothWindow::bump(0.5, 2.5, true, 16.0);
    auto mu = integrate_compact([&](double x) { return u(x); }, 0.5, 2.5, ctx, 8);
    CHECK(std::abs(mu.value - 1.0) < 1e-12);
    CHECK(w(1.0) == 0.0);
    CHECK(w(2.5) == 0.0);
  }

  TEST_CASE("bad windows are rejected") {
    CHECK_THROWS_AS(SmoothWindow::bump(2.0, 1.0), Error);
    CHECK_THROWS_AS(SmoothWindow::bump(1.0, 2.0, false, 0.0), Error);
  }

  TEST_CASE("Mellin transform of the bump") {
    PrecisionCtx ctx;
    ctx.target_tol = 1e-14;
    const cplx expected(0.00528778192009684919436879062247, 0.00221604306936510684270125989932);
    CHECK(std::abs(mellin(SmoothWindow::bump(), cplx(0.5, 1.0), ctx) - expected) < 1e-13);
  }

  TEST_CASE("hat transform at zero is the mass") {
    PrecisionCtx ctx;
    ctx.target_tol = 1e-15;
    cplx v = window_transform(SmoothWindow::bump(), TransformKind::hat, 0.0, ctx);
    CHECK(std::abs(v - bump_mass) < 1e-14);
  }

  TEST_CASE("Gauss-Legendre panels") {
    double v = gauss_legendre_panels([](double x) { return std::sin(x); }, 0.0, pi, 4);
    CHECK(std::abs(v - 2.0) < 1e-14);
    CHECK(gl16_nodes().size() == gl16_weights().size());
  }

  TEST_CASE("compensated and pairwise sums") {
    std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
    CompensatedSum<double> s;
    for (double x : xs) s.add(x);
    CHECK(s.value() == 2.0);
    std::vector<double> many(100000, 0.1);
    CHECK(std::abs(pairwise_sum(many) - 10000.0) < 1e-9);
    CompensatedSum<cplx> z;
    z.add({1e16, 1.0});
    z.add({1.0, 1e16});
    z.add({-1e16, -1e16});
    CHECK(z.value() == cplx(1.0, 1.0));
  }

  TEST_CASE("precision context validation") {
    PrecisionCtx ctx;
    ctx.target_tol = -1.0;
    CHECK_THROWS_AS(ctx.validate(), Error);
  }
}
