#include <doctest.h>

#include <cmath>

#include "rsm/moments.hpp"

using namespace rsm;

namespace {
constexpr double bump_mass = 0.00702985840660965623924127052986;
}  // namespace

TEST_SUITE("moments") {
  TEST_CASE("conductor proxy") {
    CHECK(conductor_proxy(0.0, 2.0, 1) == doctest::Approx(1.0 / std::pow(2 * M_PI, 4)));
    CHECK(conductor_proxy(3.0, 4.0, 2) == doctest::Approx(4.0 * std::pow(13.0, 2) / std::pow(2 * M_PI, 4)));
  }

  TEST_CASE("smooth averages") {
    auto w = SmoothWindow::bump();
    auto l0 = smooth_average(SmoothAverageKind::log_power(0), 12, 12, w, w);
    CHECK(std::abs(l0.value - bump_mass * bump_mass) < 1e-12);
    auto l1 = smooth_average(SmoothAverageKind::log_power(1), 12, 12, w, w);
    auto l1b = smooth_average(SmoothAverageKind::log_power(1), 24, 24, w, w);
    CHECK(l1b.value.real() > l1.value.real());
    auto m0 = smooth_average(SmoothAverageKind::conductor_power(0.0), 12, 12, w, w);
    CHECK(std::abs(m0.value - l0.value) < 1e-12);
    CHECK_THROWS_AS(SmoothAverageKind::log_power(5), Error);
  }

  TEST_CASE("theorem selection") {
    CHECK(theorem_for(FixedForm::eisenstein(0.0)) == MomentTheorem::eisenstein_zero);
    CHECK(theorem_for(FixedForm::eisenstein(1.0)) == MomentTheorem::eisenstein);
    CHECK(theorem_for(FixedForm::from_name("Delta", 10)) == MomentTheorem::cuspidal);
    CHECK(log_power_count(MomentTheorem::cuspidal) == 2);
    CHECK(log_power_count(MomentTheorem::eisenstein) == 3);
    CHECK(log_power_count(MomentTheorem::eisenstein_zero) == 5);
  }

  TEST_CASE("closed-form coefficients") {
    CHECK(leading_coefficient(MomentTheorem::eisenstein_zero, FixedForm::eisenstein(0.0), 1).value.real() ==
          doctest::Approx(1.0 / 384.0).epsilon(1e-15));
    CHECK(leading_coefficient(MomentTheorem::eisenstein, FixedForm::eisenstein(1.0), 1).value.real() ==
          doctest::Approx(0.0602004763226836994454708).epsilon(1e-12));
    const cplx b = secondary_coefficient(0.5, 1, 1);
    CHECK(std::abs(b - cplx(-0.4470037251783905999860162, 0.5613066114553516982544382)) < 1e-12);
    CHECK(std::abs(secondary_coefficient(0.5, 1, -1) - std::conj(b)) < 1e-12);
    CHECK_THROWS_AS(leading_coefficient(MomentTheorem::cuspidal, FixedForm::eisenstein(0.0), 1), Error);
  }

  TEST_CASE("main term assembly") {
    MomentConfig cfg;
    auto mt = main_term(MomentTheorem::eisenstein_zero, cfg, {0.0, 0.0, 0.0, 0.5});
    REQUIRE(mt.pieces.size() == 5);
    double sum = 0.0;
    for (const auto& p : mt.pieces) sum += p.contribution;
    CHECK(mt.value == doctest::Approx(sum));
    CHECK(mt.pieces.back().pinned);
    CHECK_FALSE(mt.pieces[3].pinned);
    auto l4 = smooth_average(SmoothAverageKind::log_power(4), cfg.T, cfg.K, cfg.W1, cfg.W2);
    CHECK(mt.pieces.back().contribution == doctest::Approx(cfg.T * cfg.K * l4.value.real() / 384.0).epsilon(1e-10));
  }

  TEST_CASE("fit of unpinned coefficients recovers synthetic data") {
    std::vector<MomentConfig> cfgs(3);
    cfgs[0].T = cfgs[0].K = 12;
    cfgs[1].T = cfgs[1].K = 16;
    cfgs[2].T = cfgs[2].K = 24;
    const std::vector<double> truth{0.0, 0.0, 0.0, 0.2};
    std::vector<double> observed;
    for (const auto& c : cfgs) observed.push_back(main_term(MomentTheorem::eisenstein_zero, c, truth).value);
    auto fit = fit_unpinned(MomentTheorem::eisenstein_zero, cfgs, observed, 1);
    REQUIRE(fit.fitted.size() == 1);
    CHECK(fit.fitted[0] == 3);
    CHECK(fit.coefficients[3] == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(fit.residual_norm < 1e-9);
  }

  TEST_CASE("configuration validation") {
    MomentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    auto bad = cfg;
    bad.N = 4;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.K = 2;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.g = FixedForm::from_name("Delta", 10);
    bad.family_weight = 12;
    CHECK_THROWS_AS(bad.validate(), Error);
    auto warn = cfg;
    warn.T = 60;
    CHECK_FALSE(warn.validate().empty());
    auto fw = cfg;
    fw.family_weight = 20;
    CHECK(fw.weights() == std::vector<int>{20});
    for (int k : cfg.weights()) CHECK(k % 2 == 0);
  }

  TEST_CASE("small direct moment is consistent") {
    MomentConfig cfg;
    cfg.T = cfg.K = 8;
    auto rep = moment_direct(cfg);
    CHECK(rep.i_direct > 0.0);
    CHECK(rep.error < 0.05 * rep.i_direct);
    CHECK(rep.diagonal > 0.0);
    CHECK(rep.main_term == doctest::Approx(rep.main.value));
    CHECK(rep.ratio == doctest::Approx(rep.i_direct / rep.main_term));
    CHECK(rep.forms > 0);
    CHECK(rep.afe_terms > 0);
  }

  TEST_CASE("term budget is enforced") {
    MomentConfig cfg;
    cfg.T = cfg.K = 8;
    cfg.term_budget = 10;
    CHECK_THROWS_AS(moment_direct(cfg), Error);
  }
}
