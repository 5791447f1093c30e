#include <doctest.h>

#include <cmath>

#include "rsm/afe.hpp"

using namespace rsm;

namespace {
// Central values of the weight 12 cusp form, from the incomplete-Gamma series.
constexpr double delta_central = 0.7921228386460305693559449;
const cplx delta_shift3(0.9989167953880346301473615, 0.2647946606596954488927797);

CentralValue central(const AfeData& d, HChoice h, int M, double tol) {
  PrecisionCtx ctx;
  ctx.target_tol = tol;
  return afe_central_value(d, gweight_for(d, h, M), ctx);
}

// First eigenform of weight k with a table long enough for the AFE at `shift`.
HeckeEigenform sized_form(int k, double shift, int M, double tol) {
  PrecisionCtx ctx;
  ctx.target_tol = tol;
  const AfeData probe = afe_data_gl2(hecke_eigenforms(k, 2)[0], shift);
  const std::size_t n = afe_cutoff(probe, gweight_for(probe, HChoice::gauss_poly(), M), ctx) + 16;
  return hecke_eigenforms(k, n)[0];
}
}  // namespace

TEST_SUITE("afe") {
  TEST_CASE("H choices") {
    CHECK(std::abs(HChoice::gauss()(0.0) - 1.0) < 1e-15);
    CHECK(std::abs(HChoice::gauss_poly()(0.0) - 1.0) < 1e-15);
    auto h = HChoice::r_vanishing(1.5);
    CHECK(std::abs(h(cplx(0.0, 1.5))) < 1e-14);
    CHECK(HChoice::parse("gauss_poly").kind == HChoice::Kind::gauss_poly);
    CHECK_THROWS_AS(HChoice::parse("bogus"), Error);
  }

  TEST_CASE("exact and floating correction polynomials agree") {
    auto vars = interleave_conjugates({cplx(3.0, 1.0), cplx(2.5, -0.7)});
    for (int M : {2, 3, 4}) {
      auto table = correction_coefficients(2, M);
      auto exact = correction_polynomial(table, vars);
      auto fast = correction_polynomial(vars, M, false);
      for (std::size_t l = 0; l < std::max(exact.size(), fast.size()); ++l) {
        cplx a = l < exact.size() ? exact[l] : 0.0, b = l < fast.size() ? fast[l] : 0.0;
        CHECK(std::abs(a - b) < 1e-12);
      }
      auto sym = correction_polynomial(symmetrize(table), vars);
      auto fast_sym = correction_polynomial(vars, M, true);
      for (std::size_t l = 0; l < fast_sym.size(); ++l)
        CHECK(std::abs((l < sym.size() ? sym[l] : 0.0) - fast_sym[l]) < 1e-12);
    }
  }

  TEST_CASE("first correction coefficients") {
    auto table = correction_coefficients(1, 2);
    CHECK_FALSE(table.empty());
    for (const auto& [key, c] : table) CHECK(key.second >= 1);
  }

  TEST_CASE("correction residual decays like eta^-M") {
    for (int k : {12, 20}) {
      std::vector<cplx> eta{k / 4.0, k / 4.0 + 0.5};
      const double r2 = asymp_residual(eta, 2, 1.0), r3 = asymp_residual(eta, 3, 1.0);
      CHECK(r3 < r2);
      CHECK(r2 <= 100.0 * std::pow(k / 4.0, -2.0) * 2.0);
    }
  }

  TEST_CASE("G by series and by contour") {
    PrecisionCtx ctx;
    ctx.target_tol = 1e-10;
    GWeight g0(HChoice::gauss(), 1, {cplx(3.0, 0.0)}, true);
    for (double x : {0.5, 1.0, 2.5}) CHECK(std::abs(g0(x) - g0.eval_contour(x, ctx)) < 1e-9);
    GWeight gp(HChoice::gauss_poly(), 3, {cplx(5.0, 2.0), cplx(5.5, 2.0)}, false);
    for (double x : {0.7, 1.0, 2.5}) CHECK(std::abs(gp(x) - gp.eval_contour(x, ctx)) < 1e-9);
    CHECK(std::abs(gp(1e6)) < 1e-12);
    CHECK(std::abs(g0.mellin_factor(0.0) - 1.0) < 1e-15);
  }

  TEST_CASE("Gaussian log-derivatives") {
    auto d = gauss_log_derivatives(0.3, 2);
    REQUIRE(d.size() == 3);
    const double h = 1e-4;
    auto up = gauss_log_derivatives(0.3 + h, 0), dn = gauss_log_derivatives(0.3 - h, 0);
    CHECK(std::abs((up[0] - dn[0]) / (2 * h) - d[1]) < 1e-6);
  }

  TEST_CASE("degree 2 central values stay within their bounds") {
    auto f = sized_form(12, 3.0, 2, 1e-10);
    double first = 0.0, last = 0.0;
    for (int M : {2, 4, 6}) {
      auto c0 = central(afe_data_gl2(f, 0.0), HChoice::gauss(), M, 1e-10);
      const double gap = std::abs(c0.value - delta_central);
      CHECK(gap <= c0.error_bound);
      auto c3 = central(afe_data_gl2(f, 3.0), HChoice::gauss(), M, 1e-10);
      CHECK(std::abs(c3.value - delta_shift3) <= c3.error_bound);
      if (M == 2) first = gap;
      last = gap;
    }
    CHECK(last < first);
  }

  TEST_CASE("H choices give the same value within their bounds") {
    auto f = sized_form(16, 2.0, 3, 1e-9);
    auto d = afe_data_gl2(f, 2.0);
    auto a = central(d, HChoice::gauss(), 3, 1e-9), b = central(d, HChoice::gauss_poly(), 3, 1e-9);
    CHECK(std::abs(a.value - b.value) <= 2.0 * (a.error_bound + b.error_bound) + 1e-12);
  }

  TEST_CASE("degree 8 pair coefficients factor for Eisenstein g") {
    auto f = hecke_eigenforms(20, 200)[0];
    auto g = FixedForm::eisenstein(1.0);
    const double t = 5.0;
    auto pair = rs_coefficients(f, g, PrimitiveCharacter::trivial(), t, 100);
    auto single = rs_coefficients_single(f, g, PrimitiveCharacter::trivial(), t, 100);
    // The pair is the Dirichlet convolution of the series with its conjugate.
    for (int n = 1; n <= 100; ++n) {
      cplx acc = 0.0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) acc += single[d] * std::conj(single[n / d]);
      CHECK(std::abs(acc - pair[n]) < 1e-9);
    }
    auto data = afe_data_rs_pair(f, g, PrimitiveCharacter::trivial(), t);
    CHECK(data.degree == 8);
    CHECK(data.self_dual);
  }

  TEST_CASE("cutoff grows with the conductor") {
    auto f = hecke_eigenforms(12, 10)[0];
    PrecisionCtx ctx;
    ctx.target_tol = 1e-8;
    auto lo = afe_data_gl2(f, 0.0), hi = afe_data_gl2(f, 40.0);
    CHECK(afe_cutoff(lo, gweight_for(lo, HChoice::gauss(), 3), ctx) <
          afe_cutoff(hi, gweight_for(hi, HChoice::gauss(), 3), ctx));
  }
}
