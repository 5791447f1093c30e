#include <cmath>
#include <numbers>

#include "rsm/arithmetic.hpp"
#include "rsm/voronoi.hpp"

namespace rsm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double direct_threshold = 1.5;
constexpr double reflect_threshold = -0.5;

void check_args(std::int64_t a, std::int64_t c) {
  if (c < 1) throw Error(ErrorKind::InvalidArgument, "voronoi", "c must be positive");
  if (gcd(a, c) != 1) throw Error(ErrorKind::ArgumentNotCoprime, "voronoi", "gcd(a, c) must be 1");
}

void check_pole(double r, cplx s) {
  for (double sign : {1.0, -1.0}) {
    if (std::abs(s - cplx(1.0, sign * r)) < 1e-12)
      throw Error(ErrorKind::PoleAtS, "voronoi", "D(E_r, a/c, s) has a pole at s = 1 +- ir");
  }
}

cplx unit_root(std::int64_t num, std::int64_t den) {
  const double angle = 2.0 * pi * static_cast<double>(mod(num, den)) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

// c^{-2s} sum_{alpha,beta mod c} e(a alpha beta / c) zeta(s-ir, alpha/c) zeta(s+ir, beta/c)
cplx hurwitz_route(double r, std::int64_t a, std::int64_t c, cplx s) {
  const double cd = static_cast<double>(c);
  std::vector<cplx> left(static_cast<std::size_t>(c)), right(static_cast<std::size_t>(c));
  for (std::int64_t k = 1; k <= c; ++k) {
    left[static_cast<std::size_t>(k - 1)] = hurwitz(s - cplx(0.0, r), static_cast<double>(k) / cd);
    right[static_cast<std::size_t>(k - 1)] = r == 0.0 ? left[static_cast<std::size_t>(k - 1)]
                                                      : hurwitz(s + cplx(0.0, r), static_cast<double>(k) / cd);
  }
  CompensatedSum<cplx> acc;
  for (std::int64_t al = 1; al <= c; ++al) {
    cplx inner = 0.0;
    for (std::int64_t be = 1; be <= c; ++be)
      inner += unit_root(a * al * be, c) * right[static_cast<std::size_t>(be - 1)];
    acc.add(left[static_cast<std::size_t>(al - 1)] * inner);
  }
  return std::exp(-2.0 * s * std::log(cd)) * acc.value();
}

// Mellin transform of the cutoff erfc(3 log x)/2.
cplx cutoff_mellin(cplx z) { return std::exp(z * z / 36.0) / z; }

// sum lambda(n) e(na/c) n^{-s} w(n/X) minus the pole contributions.
cplx direct_route(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx) {
  const double sigma = s.real();
  const double cd = static_cast<double>(c);
  // The shifted contour at Re(s+z) = -1 leaves O(c^3 X^{-(sigma+1)}).
  const double want = std::max(ctx.target_tol, 1e-15) * 1e-2;
  double X = std::pow(cd * cd * cd / want, 1.0 / (sigma + 1.0));
  X = std::clamp(X, 200.0, 2e6);
  const auto n_max = static_cast<std::size_t>(std::ceil(7.4 * X));
  const auto lambda = EisensteinEigenvalues(r).table(n_max);
  CompensatedSum<cplx> acc;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const double w = 0.5 * std::erfc(3.0 * std::log(nd / X));
    if (w == 0.0) break;
    acc.add(lambda[n] * w * unit_root(a * static_cast<std::int64_t>(n % static_cast<std::size_t>(c)), c) *
            std::exp(-s * std::log(nd)));
  }
  const double lx = std::log(X), lc = std::log(cd);
  cplx poles = 0.0;
  if (r == 0.0) {
    const cplx z0 = 1.0 - s;
    const cplx phi = std::exp(z0 * lx) * cutoff_mellin(z0);
    poles = phi / cd * (lx + z0 / 18.0 - 1.0 / z0 + 2.0 * euler_gamma - 2.0 * lc);
  } else {
    for (double sign : {1.0, -1.0}) {
      const cplx z0 = cplx(1.0, sign * r) - s;
      const cplx residue = zeta(cplx(1.0, 2.0 * sign * r)) * std::exp(-cplx(1.0, 2.0 * sign * r) * lc);
      poles += residue * std::exp(z0 * lx) * cutoff_mellin(z0);
    }
  }
  return acc.value() - poles;
}

cplx eval_with(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx, EstermannRoute route);

cplx reflect(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx, EstermannRoute inner) {
  const std::int64_t abar = c == 1 ? 0 : mod_inverse(mod(a, c), c);
  const cplx one_minus = 1.0 - s;
  const cplx log_pref = -std::log(pi) + (2.0 * s - 1.0) * std::log(2.0) +
                        (1.0 - 2.0 * s) * std::log(static_cast<double>(c) / pi) + log_gamma(one_minus + cplx(0.0, r)) +
                        log_gamma(one_minus - cplx(0.0, r));
  const cplx plus = c == 1 ? eval_with(r, 1, 1, one_minus, ctx, inner) : eval_with(r, abar, c, one_minus, ctx, inner);
  const cplx minus = c == 1 ? plus : eval_with(r, -abar, c, one_minus, ctx, inner);
  return std::exp(log_pref) * (std::cosh(pi * r) * plus - std::cos(pi * s) * minus);
}

cplx eval_with(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx, EstermannRoute route) {
  check_pole(r, s);
  switch (route) {
    case EstermannRoute::direct:
      if (!(s.real() > 1.0 + 0.25))
        throw Error(ErrorKind::DivergentAtS, "voronoi", "direct route needs Re s > 1.25");
      return direct_route(r, a, c, s, ctx);
    case EstermannRoute::hurwitz:
      return hurwitz_route(r, a, c, s);
    case EstermannRoute::functional_equation:
      return reflect(r, a, c, s, ctx, EstermannRoute::automatic);
    case EstermannRoute::automatic:
      break;
  }
  if (s.real() > direct_threshold) return direct_route(r, a, c, s, ctx);
  if (s.real() < reflect_threshold) return reflect(r, a, c, s, ctx, EstermannRoute::automatic);
  return hurwitz_route(r, a, c, s);
}

}  // namespace

cplx estermann_eval(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx, EstermannRoute route) {
  check_args(a, c);
  return eval_with(r, a, c, s, ctx, route);
}

cplx estermann_reflected(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx,
                         EstermannRoute inner) {
  check_args(a, c);
  check_pole(r, s);
  return reflect(r, a, c, s, ctx, inner);
}

cplx estermann_double_reflection(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx) {
  check_args(a, c);
  check_pole(r, s);
  return reflect(r, a, c, s, ctx, EstermannRoute::functional_equation);
}

cplx estermann_residue(double r, std::int64_t a, std::int64_t c, cplx center, double radius, const PrecisionCtx& ctx) {
  check_args(a, c);
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "voronoi", "radius must be positive");
  // Trapezoid on a circle converges geometrically for analytic integrands.
  const int nodes = 64;
  CompensatedSum<cplx> acc;
  for (int k = 0; k < nodes; ++k) {
    const cplx dir = std::polar(1.0, 2.0 * pi * (k + 0.5) / nodes);
    acc.add(estermann_eval(r, a, c, center + radius * dir, ctx) * dir);
  }
  return radius * acc.value() / static_cast<double>(nodes);
}

}  // namespace rsm
