#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rsm/modular_forms.hpp"

using namespace rsm;

namespace {
// Harmonic weight of the unique normalized cusp form of weight 12.
constexpr double rho_weight12 = 2.840287375167500491864079;
constexpr double adjoint_l_weight12 = 0.6317929457278832030107693;

std::string delta_file(std::size_t n_max) {
  auto f = hecke_eigenforms(12, n_max)[0];
  std::ostringstream s;
  s.precision(17);
  s << "# weight 12 cusp form\nweight=12 level=1 character=trivial\n";
  for (std::size_t n = 1; n <= n_max; ++n) s << n << " " << f(static_cast<std::int64_t>(n)) << "\n";
  return s.str();
}
}  // namespace

TEST_SUITE("modular_forms") {
  TEST_CASE("q-expansions") {
    auto d = delta_series(12);
    const long tau[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612};
    for (int n = 0; n < 12; ++n) CHECK(d[n] == tau[n]);
    auto e4 = eisenstein_series(4, 10);
    CHECK(e4[1] == 240);
    CHECK(e4[3] == 240 * 28);
    auto e8 = eisenstein_series(8, 10);
    auto sq = (e4 * e4).truncated(10);
    for (int n = 0; n < 10; ++n) CHECK(sq[n] == e8[n]);
  }

  TEST_CASE("Kronecker multiplication matches schoolbook") {
    std::vector<mpz_class> a{3, -7, 0, mpz_class("12345678901")}, b{-2, 5, 9};
    auto c = series_multiply(a, b, 6);
    std::vector<mpz_class> ref(6, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (i + j < 6) ref[i + j] += a[i] * b[j];
    CHECK(c == ref);
  }

  TEST_CASE("dimensions and Miller basis") {
    CHECK(modular_forms_dimension(12) == 2);
    CHECK(cusp_forms_dimension(12) == 1);
    CHECK(cusp_forms_dimension(14) == 0);
    CHECK(cusp_forms_dimension(24) == 2);
    CHECK(cusp_forms_dimension(48) == 4);
    auto basis = miller_basis(24, 10);
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) CHECK(basis[i][j] == (i == j ? 1 : 0));
    CHECK(cusp_part(basis).size() == 2);
  }

  TEST_CASE("Hecke operators preserve Delta") {
    auto d = delta_series(60);
    auto t2 = d.hecke(2);
    for (std::size_t n = 1; n < t2.precision(); ++n) CHECK(t2[n] == d[n] * -24);
  }

  TEST_CASE("Hecke eigenforms are multiplicative and satisfy Deligne") {
    for (int k : {12, 24, 36, 44, 48}) {
      auto forms = hecke_eigenforms(k, 200);
      REQUIRE(static_cast<int>(forms.size()) == cusp_forms_dimension(k));
      for (const auto& f : forms) {
        CHECK(f(1) == doctest::Approx(1.0));
        CHECK(std::abs(f(6) - f(2) * f(3)) < 1e-9);
        CHECK(std::abs(f(4) - (f(2) * f(2) - 1.0)) < 1e-9);
        for (int p : {2, 3, 5, 7, 199}) CHECK(std::abs(f(p)) <= 2.0 + 1e-9);
      }
      for (std::size_t i = 1; i < forms.size(); ++i) CHECK(forms[i](2) - forms[i - 1](2) > 1e-6);
    }
    CHECK(hecke_eigenforms(12, 10)[0](2) == doctest::Approx(-0.5303300858899106433).epsilon(1e-14));
    CHECK_THROWS_AS(hecke_eigenforms(12, 10)[0](11), Error);
  }

  TEST_CASE("Petersson weights") {
    PrecisionCtx ctx;
    ctx.target_tol = 1e-12;
    CHECK(petersson_rho(12, ctx)[0] == doctest::Approx(rho_weight12).epsilon(1e-9));
    auto sol = petersson_solve(24, ctx);
    CHECK(sol.fit_residual < 1e-10);
    CHECK(sol.residual(3, 7, ctx) < 1e-8);
    CHECK(petersson_residual(16, 2, 9, ctx) < 1e-8);
  }

  TEST_CASE("adjoint L-value at 1") {
    auto g = FixedForm::holomorphic(hecke_eigenforms(12, 100000)[0]);
    auto L = adjoint_l_one(g, 100000);
    CHECK(std::abs(L.value - adjoint_l_weight12) <= std::max(3.0 * L.error, 1e-3));
  }

  TEST_CASE("fixed forms by name") {
    auto e = FixedForm::from_name("E0.5", 0);
    CHECK(e.kind() == FixedForm::Kind::eisenstein);
    CHECK(e.r() == 0.5);
    CHECK_FALSE(e.is_cuspidal());
    auto d = FixedForm::from_name("Delta", 50);
    CHECK(d.weight() == 12);
    CHECK(d.lambda(2) == doctest::Approx(-0.5303300858899106433));
    CHECK_THROWS_AS(FixedForm::from_name("nonsense", 10), Error);
    CHECK_THROWS_AS(FixedForm::from_name("E-1", 10), Error);
  }

  TEST_CASE("eigenform files") {
    auto data = parse_eigenform_text(delta_file(30));
    CHECK(data.kind == EigenformFile::Kind::holomorphic);
    CHECK(data.weight == 12);
    CHECK(data.lambda.size() == 31);
    auto g = FixedForm::from_file(data, "delta-file");
    CHECK(g.lambda(7) == doctest::Approx(hecke_eigenforms(12, 10)[0](7)));

    auto maass = parse_eigenform_text("r=9.53369526 epsilon=1\n1 1\n2 1.5\n3 -0.5\n4 1.25\n5 0.1\n6 -0.75\n");
    CHECK(maass.kind == EigenformFile::Kind::maass);

    CHECK_THROWS_AS(parse_eigenform_text("weight=12 level=1 character=trivial\n1 2\n"), Error);
    CHECK_THROWS_AS(parse_eigenform_text("weight=12 level=1 character=trivial\n1 1\n2 1\n3 1\n6 5\n4 1\n5 1\n"), Error);
    CHECK_THROWS_AS(parse_eigenform_text("1 1\n"), Error);
    CHECK_THROWS_AS(parse_eigenform_text("colour=blue\n1 1\n"), Error);
    CHECK_THROWS_AS(parse_eigenform_text("weight=12 level=1 character=trivial\n1 1\n3 0.5\n"), Error);
    CHECK_THROWS_AS(load_eigenform_file("/nonexistent/eigenform.txt"), Error);
  }
}
