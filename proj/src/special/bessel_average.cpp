#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "rsm/special.hpp"

namespace rsm {

namespace {
constexpr double pi = std::numbers::pi;
}

double hat_t4_norm(const SmoothWindow& h, const PrecisionCtx& ctx) {
  PrecisionCtx inner = ctx.with_tol(1e-15);
  auto integrand = [&](double t) {
    const double t2 = t * t;
    return std::abs(window_transform(h, TransformKind::hat, t, inner)) * t2 * t2;
  };
  // Integrate outward in unit blocks until the block contribution is negligible.
  const double floor_scale = std::abs(window_transform(h, TransformKind::hat, 0.0, inner));
  // |hat h| has kinks at its zeros, so each block gets a tolerance relative to
  // the running total instead of a fixed absolute one.
  double total = 0.0;
  const double block = 8.0;
  for (int b = 0; b < 400; ++b) {
    const double lo = b * block, hi = lo + block;
    const double rough = gauss_legendre_panels(integrand, lo, hi, 8);
    const PrecisionCtx outer = ctx.with_tol(std::max(1e-8 * (total + std::abs(rough)), 1e-300));
    const double part = integrate_compact(integrand, lo, hi, outer, 8).value;
    total += part;
    if (b > 4 && part < 1e-10 * total) break;
    // Past this point hat h is rounding noise, which t^4 would amplify.
    if (std::abs(window_transform(h, TransformKind::hat, hi, inner)) < 1e-12 * floor_scale) break;
  }
  return 2.0 * total;  // |hat h(-t)| = |hat h(t)| for real h
}

BesselAverage bessel_weight_average(const SmoothWindow& h, double K, double xi, const PrecisionCtx& ctx) {
  if (!(K > 0.0) || !(xi > 0.0))
    throw Error(ErrorKind::InvalidArgument, "special_functions", "K and xi must be positive");
  BesselAverage out;
  CompensatedSum<double> acc;
  const int k_lo = static_cast<int>(std::floor(K * h.lo())) + 1;
  const int k_hi = static_cast<int>(std::ceil(K * h.hi())) + 1;
  for (int k = std::max(2, k_lo - (k_lo % 2)); k <= k_hi; k += 2) {
    const double w = h((k - 1) / K);
    if (w == 0.0) continue;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;  // i^{-k}
    acc.add(sign * w * boost::math::cyl_bessel_j(k - 1, xi));
    ++out.terms;
  }
  out.lhs = acc.value();
  const cplx phase = std::polar(1.0, xi - 0.25 * pi);
  const cplx tilde = window_transform(h, TransformKind::tilde, K * K / (2.0 * xi), ctx);
  out.main_term = -(K / (2.0 * std::sqrt(xi))) * (phase * tilde).imag();
  out.residual = out.lhs - out.main_term;
  out.error_scale = xi / std::pow(K, 4) * hat_t4_norm(h, ctx);
  return out;
}

}  // namespace rsm
