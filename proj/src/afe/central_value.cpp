#include <cmath>
#include <numbers>

#include "rsm/afe.hpp"

namespace rsm {

GWeight gweight_for(const AfeData& data, HChoice h, int M) { return GWeight(h, M, data.eta(), data.self_dual); }

double weight_approximation_error(const AfeData& data, const GWeight& G, const PrecisionCtx& ctx) {
  const auto eta = data.eta();
  auto integrand = [&](double y) {
    const cplx s(0.0, y);
    return std::abs(gamma_ratio_factor(eta, s) - G.mellin_factor(s)) * std::abs(G.h()(s)) / std::abs(y);
  };
  const double Y = 9.0;
  const PrecisionCtx inner = ctx.with_tol(1e-12);
  const double total =
      integrate_compact(integrand, 0.0, Y, inner, 8).value + integrate_compact(integrand, -Y, 0.0, inner, 8).value;
  return total / (2.0 * std::numbers::pi);
}

std::size_t afe_cutoff(const AfeData& data, const GWeight& G, const PrecisionCtx& ctx) {
  const double sqrtC = std::sqrt(data.C);
  // Smallest x on a log grid past which the envelope times sqrt(n) is below tol.
  double u = 0.0;
  for (;; u += 0.125) {
    const double x = std::exp(u);
    if (G.envelope(x) * std::sqrt(x * sqrtC) < 0.1 * ctx.target_tol) break;
    if (u > 60.0) throw Error(ErrorKind::NonConvergence, "afe", "weight does not decay");
  }
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::exp(u) * sqrtC)));
}

CentralValue afe_central_value(const AfeData& data, const GWeight& G, const PrecisionCtx& ctx, double weight_error) {
  if (!data.coefficients) throw Error(ErrorKind::InvalidArgument, "afe", "no coefficient stream");
  const double sqrtC = std::sqrt(data.C);
  const std::size_t N = afe_cutoff(data, G, ctx);
  const auto a = data.coefficients(N);

  CompensatedSum<cplx> sum, last_half;
  double abs_mass = 0.0, last_mass = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    if (a[n] == cplx(0.0, 0.0)) continue;
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    const cplx term = a[n] * inv_sqrt * G(static_cast<double>(n) / sqrtC);
    sum.add(term);
    abs_mass += std::abs(a[n]) * inv_sqrt;
    if (2 * n > N) {
      last_half.add(term);
      last_mass += std::abs(a[n]) * inv_sqrt;
    }
  }
  const cplx S = sum.value();
  const cplx factor = data.kappa * data.lambda_ratio;
  CentralValue out;
  out.value = S + factor * std::conj(S);
  out.terms = N;
  out.tail = (1.0 + std::abs(factor)) *
             (std::abs(last_half.value()) + G.envelope(static_cast<double>(N) / sqrtC) * last_mass);
  if (weight_error < 0.0) weight_error = weight_approximation_error(data, G, ctx);
  out.error_bound = (1.0 + std::abs(factor)) * weight_error * abs_mass + out.tail;
  if (!std::isfinite(std::abs(out.value))) throw Error(ErrorKind::NonConvergence, "afe", "central value is not finite");
  return out;
}

}  // namespace rsm
