#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rsm/afe.hpp"
#include "rsm/moments.hpp"
#include "rsm/special.hpp"
#include "rsm/voronoi.hpp"

using namespace rsm;

namespace {

// Frozen high-precision references.
constexpr double adjoint_l_weight12 = 0.6317929457278832030107693;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fixed(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---- 1: summation formula ---------------------------------------------------------------

void voronoi_identity(Outcome& out) {
  const SmoothWindow F = SmoothWindow::bump(0.5, 2.5, true, 16.0);
  const FixedForm forms[] = {FixedForm::from_name("Delta", 100000), FixedForm::eisenstein(0.0), FixedForm::eisenstein(1.0)};
  const std::pair<int, int> cusps[] = {{1, 1}, {1, 2}, {1, 3}, {2, 5}};
  double worst = 0.0, slowest = 0.0;
  for (const auto& g : forms) {
    for (auto [a, c] : cusps) {
      Stopwatch sw;
      const VoronoiInstance inst{g, a, c, F};
      const double res = std::abs(voronoi_lhs(inst) - voronoi_rhs(inst));
      const double sec = sw.seconds();
      worst = std::max(worst, res);
      slowest = std::max(slowest, sec);
      out.require(res <= 1e-8, g.label() + " a/c=" + std::to_string(a) + "/" + std::to_string(c) + " residual " + sci(res));
      out.require(sec <= 60.0, g.label() + " runtime " + fixed(sec, 1) + "s");
    }
  }
  out.detail << "max |lhs-rhs|=" << sci(worst) << " slowest case " << fixed(slowest, 1) << "s";
}

// ---- 2: Estermann functional equation and residues ----------------------------------------

void estermann(Outcome& out) {
  PrecisionCtx ctx;
  double inv = 0.0;
  for (int i = 0; i < 10; ++i) {
    const cplx s(-0.5 + 0.2 * (i % 3), -4.5 + i);
    const double r = i % 2 ? 0.5 : 1.0;
    const int c = 1 + 2 * (i % 3);
    const int a = c == 1 ? 1 : 2;
    const cplx d = estermann_eval(r, a, c, s, ctx);
    const double res = std::abs(d - estermann_double_reflection(r, a, c, s, ctx));
    inv = std::max(inv, res);
    out.require(res <= 1e-8, "involution at s=" + fixed(s.real(), 1) + fixed(s.imag(), 1) + "i: " + sci(res));
  }
  double resid = 0.0;
  for (double r : {0.5, 1.0}) {
    for (int c : {1, 3, 5}) {
      for (int sign : {1, -1}) {
        const cplx z(1.0, 2.0 * sign * r);
        const cplx expected = zeta(z) * std::exp(-z * std::log(static_cast<double>(c)));
        const double err = std::abs(estermann_residue(r, 1, c, cplx(1.0, sign * r), 0.1, ctx) - expected);
        resid = std::max(resid, err);
        out.require(err <= 1e-6, "residue r=" + fixed(r, 1) + " c=" + std::to_string(c) + ": " + sci(err));
      }
    }
  }
  out.detail << "involution max " << sci(inv) << ", residue max " << sci(resid);
}

// ---- 3: Xi identity -----------------------------------------------------------------------

void xi_identity(Outcome& out) {
  struct Case {
    int N;
    double r, s;
  };
  const Case cases[] = {{1, 0.0, 1.2}, {1, 0.7, 1.2}, {5, 0.7, 1.2}, {8, 0.3, 1.5}};
  Stopwatch sw;
  double worst = 0.0;
  for (const auto& cs : cases) {
    const PrimitiveCharacter chi = primitive_even_characters(cs.N).at(0);
    for (int sign : {1, -1}) {
      const cplx closed = xi_closed(cs.s, cs.r, chi, sign);
      double previous = INFINITY;
      for (std::int64_t X : {100, 1000, 10000}) {
        const double err = std::abs(xi_bruteforce(cs.s, cs.r, chi, sign, X).value - closed);
        out.require(err < previous, "error not decreasing at N=" + std::to_string(cs.N) + " X=" + std::to_string(X));
        previous = err;
      }
      worst = std::max(worst, previous);
      out.require(previous <= 1e-4, "N=" + std::to_string(cs.N) + " r=" + fixed(cs.r, 1) + " error " + sci(previous));
    }
  }
  const double sec = sw.seconds();
  out.require(sec <= 300.0, "runtime " + fixed(sec, 0) + "s");
  out.detail << "max error at X=1e4 " << sci(worst) << ", " << fixed(sec, 1) << "s";
}

// ---- 4: Petersson formula -----------------------------------------------------------------

void petersson(Outcome& out) {
  PrecisionCtx ctx;
  ctx.target_tol = 1e-12;
  double worst = 0.0;
  std::size_t pairs = 0;
  for (int k : {12, 16, 18, 20, 22, 24}) {
    const PeterssonSolution sol = petersson_solve(k, ctx);
    for (int m = 1; m <= 10; ++m) {
      for (int n = m; n <= 10; ++n) {
        const bool trained = std::any_of(sol.training_pairs.begin(), sol.training_pairs.end(), [&](auto p) {
          return (p.first == m && p.second == n) || (p.first == n && p.second == m);
        });
        if (trained) continue;
        const double res = sol.residual(m, n, ctx);
        worst = std::max(worst, res);
        ++pairs;
        out.require(res <= 1e-8, "k=" + std::to_string(k) + " (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                                     ") residual " + sci(res));
      }
    }
  }
  out.detail << "max held-out residual " << sci(worst) << " over " << pairs << " pairs";
}

// ---- 5: AFE factorization -----------------------------------------------------------------

void afe_factorization(Outcome& out) {
  const int k = 20;
  const double t = 5.0, r = 1.0;
  PrecisionCtx ctx;
  ctx.target_tol = 1e-10;
  const FixedForm g = FixedForm::eisenstein(r);
  const AfeData shape = afe_data_rs_shape(k, g, PrimitiveCharacter::trivial(), t);
  std::size_t n_max = 0;
  for (int M : {3, 6}) n_max = std::max(n_max, afe_cutoff(shape, gweight_for(shape, HChoice::gauss(), M), ctx) + 16);
  const HeckeEigenform f = hecke_eigenforms(k, n_max).at(0);
  std::vector<double> rel;
  for (int M : {3, 6}) {
    const AfeData d8 = afe_data_rs_pair(f, g, PrimitiveCharacter::trivial(), t);
    const double v8 = afe_central_value(d8, gweight_for(d8, HChoice::gauss(), M), ctx).value.real();
    double product = 1.0;
    for (double sign : {1.0, -1.0}) {
      const AfeData d2 = afe_data_gl2(f, t + sign * r);
      product *= std::norm(afe_central_value(d2, gweight_for(d2, HChoice::gauss(), M), ctx).value);
    }
    rel.push_back(std::abs(v8 - product) / std::abs(product));
  }
  out.require(rel[1] <= 1e-3, "relative discrepancy at M=6 " + sci(rel[1]));
  out.require(rel[1] <= rel[0] * (1.0 + 1e-9) + 1e-12, "discrepancy grew from M=3 to M=6");
  out.detail << "relative discrepancy M=3 " << sci(rel[0]) << ", M=6 " << sci(rel[1]);
}

// ---- 6: independence of H -----------------------------------------------------------------

void afe_weight_independence(Outcome& out) {
  PrecisionCtx ctx;
  ctx.target_tol = 1e-9;
  const FixedForm g = FixedForm::eisenstein(1.0);
  double worst = 0.0;
  for (int k : {12, 16, 20}) {
    for (double t : {0.0, 2.5, 5.0}) {
      const AfeData shape = afe_data_rs_shape(k, g, PrimitiveCharacter::trivial(), t);
      const std::size_t n_max = afe_cutoff(shape, gweight_for(shape, HChoice::gauss_poly(), 3), ctx) + 16;
      const HeckeEigenform f = hecke_eigenforms(k, n_max).at(0);
      const AfeData d = afe_data_rs_pair(f, g, PrimitiveCharacter::trivial(), t);
      const CentralValue a = afe_central_value(d, gweight_for(d, HChoice::gauss(), 3), ctx);
      const CentralValue b = afe_central_value(d, gweight_for(d, HChoice::gauss_poly(), 3), ctx);
      const double bound = a.error_bound + b.error_bound;
      const double ratio = std::abs(a.value - b.value) / bound;
      worst = std::max(worst, ratio);
      out.require(ratio <= 2.0, "k=" + std::to_string(k) + " t=" + fixed(t, 1) + " gap/bound " + fixed(ratio, 3));
    }
  }
  out.detail << "max |gauss - gauss_poly| / combined bound " << fixed(worst, 3);
}

// ---- 7: correction coefficients -------------------------------------------------------------

void correction_validity(Outcome& out) {
  double c = 0.0;
  for (int k : {12, 20, 40}) {
    // Archimedean data of L(s, f) for f of weight k.
    const std::vector<cplx> eta{k / 4.0, k / 4.0 + 0.5};
    const double eta_min = k / 4.0;
    for (int M : {2, 3}) {
      for (int i = 1; i <= 40; ++i) {
        for (double sign : {1.0, -1.0}) {
          const double t = sign * eta_min / 2.0 * i / 40.0;
          const double at = std::abs(t);
          const double scale = std::pow(eta_min, -M) * (at + std::pow(at, 2 * M));
          c = std::max(c, asymp_residual(eta, M, t) / scale);
        }
      }
    }
  }
  out.require(c <= 100.0, "measured constant " + fixed(c, 3));
  out.detail << "measured constant c=" << fixed(c, 4);
}

// ---- 8: Bessel averaging ------------------------------------------------------------------

void bessel_averaging(Outcome& out) {
  const SmoothWindow h = SmoothWindow::bump();
  const double Ks[] = {8.0, 16.0, 32.0};
  double constant = 0.0;
  std::ostringstream slopes;
  for (double xi : {50.0, 200.0, 1000.0}) {
    std::vector<double> lx, ly;
    for (double K : Ks) {
      const BesselAverage avg = bessel_weight_average(h, K, xi);
      constant = std::max(constant, std::abs(avg.residual) / avg.error_scale);
      lx.push_back(std::log(K));
      ly.push_back(std::log(std::abs(avg.residual)));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    slopes << " xi=" << xi << ":" << fixed(slope, 2);
    out.require(slope >= -4.5 && slope <= -3.5, "K-exponent at xi=" + fixed(xi, 0) + " is " + fixed(slope, 3));
  }
  out.require(constant <= 10.0, "measured constant " + fixed(constant, 3));
  out.detail << "constant " << fixed(constant, 3) << ", K-exponents" << slopes.str();
}

// ---- 9: main-term constants ---------------------------------------------------------------

void theorem_constants(Outcome& out) {
  double worst = 0.0;
  for (double r : {0.5, 1.0}) {
    const FixedForm g = FixedForm::eisenstein(r);
    const cplx z = zeta(cplx(1.0, 2.0 * r));
    const cplx a2 = leading_coefficient(MomentTheorem::eisenstein, g, 1).value;
    const double e2 = std::abs(a2 - std::norm(z) / 8.0) / std::abs(a2);
    const cplx b = secondary_coefficient(r, 1, 1);
    const double eb = std::abs(b - 0.5 * z * z * z * z) / std::abs(b);
    worst = std::max({worst, e2, eb});
    out.require(e2 <= 1e-14, "a_2 at r=" + fixed(r, 1) + " rel " + sci(e2));
    out.require(eb <= 1e-14, "b+ at r=" + fixed(r, 1) + " rel " + sci(eb));
  }
  const double a4 = leading_coefficient(MomentTheorem::eisenstein_zero, FixedForm::eisenstein(0.0), 1).value.real();
  const double e4 = std::abs(a4 * 384.0 - 1.0);
  worst = std::max(worst, e4);
  out.require(e4 <= 1e-15, "a_4 rel " + sci(e4));
  const std::size_t primes_to = 1000000;
  const FixedForm delta = FixedForm::holomorphic(hecke_eigenforms(12, primes_to).at(0));
  const auto a1 = leading_coefficient(MomentTheorem::cuspidal, delta, 1, primes_to);
  const double e1 = std::abs(a1.value.real() - 0.5 * adjoint_l_weight12);
  out.require(e1 <= a1.error, "a_1 off by " + sci(e1) + " against reported " + sci(a1.error));
  out.detail << "closed forms max rel " << sci(worst) << "; a_1 error " << sci(e1) << " (reported " << sci(a1.error)
             << ")";
}

// ---- 10: moment trend ---------------------------------------------------------------------

void moment_trend(Outcome& out) {
  Stopwatch sw;
  std::vector<MomentConfig> configs;
  std::vector<double> observed;
  for (double size : {12.0, 16.0, 24.0}) {
    MomentConfig cfg;
    cfg.T = cfg.K = size;
    const MomentReport rep = moment_direct(cfg, {false, {}});
    configs.push_back(cfg);
    observed.push_back(rep.i_direct);
    out.detail << "I(" << size << ")=" << fixed(rep.i_direct, 6) << "+-" << sci(rep.error) << " ";
  }
  const MomentTheorem th = MomentTheorem::eisenstein_zero;
  const UnpinnedFit fit = fit_unpinned(th, {configs[0], configs[1]}, {observed[0], observed[1]}, 1);
  double previous = INFINITY;
  out.detail << "a_" << fit.fitted.at(0) << "=" << fixed(fit.coefficients[fit.fitted[0]], 5) << " ratios";
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const double ratio = observed[i] / main_term(th, configs[i], fit.coefficients).value;
    const double distance = std::abs(ratio - 1.0);
    out.detail << " " << fixed(ratio, 4);
    out.require(distance < previous, "ratio at T=K=" + fixed(configs[i].K, 0) + " is not closer to 1");
    previous = distance;
  }
  const double sec = sw.seconds();
  out.require(sec <= 1800.0, "runtime " + fixed(sec, 0) + "s");
  out.detail << "; " << fixed(sec, 0) << "s";
}

// ---- 11: coefficient growth ---------------------------------------------------------------

void coefficient_growth(Outcome& out) {
  const std::size_t M = 100000;
  const FixedForm forms[] = {FixedForm::from_name("Delta", M), FixedForm::eisenstein(0.0), FixedForm::eisenstein(1.0)};
  for (const auto& g : forms) {
    const std::vector<double> lambda = g.lambda_table(M);
    // Smallest C with the bound at every prefix length up to M.
    double partial = 0.0, C = 0.0;
    for (std::size_t m = 1; m <= M; ++m) {
      partial += lambda[m] * lambda[m];
      C = std::max(C, partial / std::pow(static_cast<double>(m), 1.1));
    }
    out.require(std::isfinite(C) && partial <= C * std::pow(static_cast<double>(M), 1.1), g.label() + " bound");
    out.detail << g.label() << ": C=" << fixed(C, 3) << " ";
  }
  // The divisor case against exact integer arithmetic.
  std::vector<std::int64_t> d(M + 1, 0);
  for (std::size_t a = 1; a <= M; ++a)
    for (std::size_t b = a; b <= M; b += a) ++d[b];
  std::int64_t exact = 0;
  for (std::size_t m = 1; m <= M; ++m) exact += d[m] * d[m];
  const auto e0 = FixedForm::eisenstein(0.0).lambda_table(M);
  double sum = 0.0;
  for (std::size_t m = 1; m <= M; ++m) sum += e0[m] * e0[m];
  out.require(std::abs(sum - static_cast<double>(exact)) < 0.5, "divisor sum mismatch");
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> list = {
      {"summation formula", voronoi_identity},
      {"Estermann functional equation and residues", estermann},
      {"Xi identity", xi_identity},
      {"Petersson formula", petersson},
      {"AFE factorization", afe_factorization},
      {"AFE weight independence", afe_weight_independence},
      {"correction coefficients", correction_validity},
      {"Bessel averaging", bessel_averaging},
      {"main-term constants", theorem_constants},
      {"moment trend", moment_trend},
      {"coefficient growth", coefficient_growth},
  };
  return list;
}

bool run(int n) {
  const auto& [name, fn] = criteria().at(static_cast<std::size_t>(n - 1));
  Outcome out;
  Stopwatch sw;
  try {
    fn(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " exception: " << e.what();
  }
  std::printf("criterion %d (%s): %s  %s  [%.1fs]\n", n, name.c_str(), out.pass ? "PASS" : "FAIL", out.detail.str().c_str(),
              sw.seconds());
  std::fflush(stdout);
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
      return 2;
    }
  }
  if (selected.empty())
    for (int n = 1; n <= static_cast<int>(criteria().size()); ++n) selected.push_back(n);
  bool all = true;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "no criterion %d\n", n);
      return 2;
    }
    all = run(n) && all;
  }
  return all ? 0 : 1;
}
