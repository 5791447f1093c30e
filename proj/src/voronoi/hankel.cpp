#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "rsm/voronoi.hpp"

namespace rsm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_reductions = 12;   // applied to integrands
constexpr int bound_order = 28;      // used only in decay bounds
using Derivs = std::array<double, max_reductions + 1>;
using BoundDerivs = std::array<double, bound_order + 1>;

// d^j/dx^j (F(x) x^{-half_order}) for j = 0..Order.
template <int Order>
std::array<double, Order + 1> window_derivatives(const SmoothWindow& F, double half_order, double x) {
  std::array<double, Order + 1> out{};
  const double a = F.lo(), b = F.hi();
  if (!(x > a && x < b)) return out;
  if (F.sharpness() / ((x - a) * (b - x)) > 700.0) return out;
  namespace ad = boost::math::differentiation;
  const auto X = ad::make_fvar<double, Order>(x);
  const auto G = F.scale() * exp(-F.sharpness() / ((X - a) * (b - X))) * pow(X, -half_order);
  for (int j = 0; j <= Order; ++j) out[static_cast<std::size_t>(j)] = G.derivative(static_cast<std::size_t>(j));
  return out;
}

// T_j = int |G^{(j)}(x)| x^{(order+j)/2} dx, cached per window and order.
const BoundDerivs& derivative_norms(const SmoothWindow& F, int order) {
  static std::mutex lock;
  static std::map<std::tuple<double, double, double, double, int>, BoundDerivs> cache;
  const auto key = std::make_tuple(F.lo(), F.hi(), F.scale(), F.sharpness(), order);
  std::lock_guard guard(lock);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BoundDerivs norms{};
  const auto& nodes = gl16_nodes();
  const auto& weights = gl16_weights();
  const int panels = 512;
  const double width = (F.hi() - F.lo()) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = F.lo() + (p + 0.5) * width, h = 0.5 * width;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (double x : {c - h * nodes[i], c + h * nodes[i]}) {
        const auto d = window_derivatives<bound_order>(F, 0.5 * order, x);
        for (int j = 0; j <= bound_order; ++j)
          norms[static_cast<std::size_t>(j)] +=
              h * weights[i] * std::abs(d[static_cast<std::size_t>(j)]) * std::pow(x, 0.5 * (order + j));
      }
    }
  }
  return cache.emplace(key, norms).first->second;
}

double bessel_value(HankelKernel::Bessel kind, int order, double mu, double y, const PrecisionCtx& ctx) {
  switch (kind) {
    case HankelKernel::Bessel::J:
      return boost::math::cyl_bessel_j(order, y);
    case HankelKernel::Bessel::Y:
      return boost::math::cyl_neumann(order, y);
    case HankelKernel::Bessel::K:
      if (mu != 0.0) return bessel_k_imag_order(mu, y, ctx);
      return boost::math::cyl_bessel_k(order, y);
    case HankelKernel::Bessel::imag_J:
      return bessel_j_imag_order_im(mu, y);
  }
  return 0.0;
}

// Rough sup of |B_m| on [y0, inf).
double bessel_sup(HankelKernel::Bessel kind, int order, double mu, double y0) {
  switch (kind) {
    case HankelKernel::Bessel::J:
      return 1.0;
    case HankelKernel::Bessel::Y:
      return std::max(std::abs(boost::math::cyl_neumann(order, y0)), 0.8 / std::cbrt(std::max(y0, 1.0)));
    case HankelKernel::Bessel::K:
      // |K_{i mu}| <= K_0
      return mu != 0.0 ? boost::math::cyl_bessel_k(0, y0) : boost::math::cyl_bessel_k(order, y0);
    case HankelKernel::Bessel::imag_J:
      return std::max(1.0, std::abs(bessel_j_imag_order_im(mu, y0)));
  }
  return 1.0;
}

double reduction_sign(HankelKernel::Bessel kind) { return kind == HankelKernel::Bessel::K ? 1.0 : -1.0; }


}  // namespace

HankelKernel HankelKernel::J(int n, double prefactor) { return {Bessel::J, n, 0.0, prefactor}; }
HankelKernel HankelKernel::Y(int n, double prefactor) { return {Bessel::Y, n, 0.0, prefactor}; }
HankelKernel HankelKernel::K(int n, double prefactor) { return {Bessel::K, n, 0.0, prefactor}; }
HankelKernel HankelKernel::imag_j(double mu, double prefactor) { return {Bessel::imag_J, 0, mu, prefactor}; }
HankelKernel HankelKernel::k_imag(double mu, double prefactor) { return {Bessel::K, 0, mu, prefactor}; }

double HankelKernel::operator()(double x, const PrecisionCtx& ctx) const {
  return prefactor * bessel_value(bessel, order, mu, x, ctx);
}

std::vector<HankelKernel> voronoi_kernels(const FormKernel& g, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "voronoi", "sign must be +-1");
  if (g.kind == FormKernel::Kind::holomorphic) {
    if (sign < 0) return {};
    const double ik = (g.weight / 2) % 2 == 0 ? 1.0 : -1.0;
    return {HankelKernel::J(g.weight - 1, 2.0 * pi * ik)};
  }
  if (sign > 0) {
    if (g.r == 0.0) return {HankelKernel::Y(0, -2.0 * pi)};
    return {HankelKernel::imag_j(2.0 * g.r, -2.0 * pi / std::sinh(pi * g.r))};
  }
  if (g.r == 0.0) return {HankelKernel::K(0, 4.0 * g.eps)};
  return {HankelKernel::k_imag(2.0 * g.r, 4.0 * g.eps * std::cosh(pi * g.r))};
}

HankelResult hankel_transform(const SmoothWindow& F, const HankelKernel& B, double alpha, const PrecisionCtx& ctx,
                              int reductions) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "voronoi", "alpha must be positive");
  // Plain quadrature already meets absolute tolerances; the reduction is
  // applied on request and drives the decay bounds.
  int j = std::max(reductions, 0);
  if (j > 0) {
    if (!B.reducible())
      throw Error(ErrorKind::InvalidArgument, "voronoi", "this kernel has no order-raising reduction");
    if (F.kind() != SmoothWindow::Kind::bump)
      throw Error(ErrorKind::InvalidArgument, "voronoi", "reductions need a differentiable (bump) window");
    if (j > max_reductions) throw Error(ErrorKind::InvalidArgument, "voronoi", "at most 12 reductions");
  }
  PrecisionCtx local = ctx.with_tol(std::max(1e-16, ctx.target_tol * 1e-4));
  local.max_panels = std::max(ctx.max_panels, 50000);
  const double oscillations = alpha * (std::sqrt(F.hi()) - std::sqrt(F.lo())) / (2.0 * pi);
  const int panels = 2 + static_cast<int>(std::ceil(oscillations));
  Estimate<double> est;
  if (j == 0 && reductions < 0) {
    // Gauss-Legendre in u = sqrt(x) with one 16-node panel per kernel
    // oscillation; the truncation error is far below rounding.
    const double ulo = std::sqrt(F.lo()), uhi = std::sqrt(F.hi());
    const int gl_panels = std::max(16, panels);
    double mass = 0.0;
    auto g = [&](double u) {
      const double w = F(u * u);
      if (w == 0.0) return 0.0;
      const double v = 2.0 * u * w * bessel_value(B.bessel, B.order, B.mu, alpha * u, ctx);
      mass += std::abs(v);
      return v;
    };
    est.value = gauss_legendre_panels(g, ulo, uhi, gl_panels);
    est.error = 1e-15 * mass * (uhi - ulo) / (16.0 * gl_panels);
  } else if (j == 0) {
    auto f = [&](double x) {
      const double w = F(x);
      return w == 0.0 ? 0.0 : w * bessel_value(B.bessel, B.order, B.mu, alpha * std::sqrt(x), ctx);
    };
    est = integrate_compact(f, F.lo(), F.hi(), local, panels);
  } else {
    const int order = B.order + j;
    auto f = [&](double x) {
      const Derivs d = window_derivatives<max_reductions>(F, 0.5 * B.order, x);
      const double gj = d[static_cast<std::size_t>(j)];
      if (gj == 0.0) return 0.0;
      return gj * std::pow(x, 0.5 * order) * bessel_value(B.bessel, order, B.mu, alpha * std::sqrt(x), ctx);
    };
    const double factor = std::pow(reduction_sign(B.bessel) * 2.0 / alpha, j);
    // Tolerance on the reduced integral, floored at double resolution of its size.
    const double norm = derivative_norms(F, B.order)[static_cast<std::size_t>(j)];
    local.target_tol = std::max(local.target_tol / std::abs(factor), 1e-15 * norm);
    est = integrate_compact(f, F.lo(), F.hi(), local, panels);
    est.value *= factor;
    est.error *= std::abs(factor);
  }
  return {B.prefactor * est.value, std::abs(B.prefactor) * est.error, j};
}

double hankel_transform(const SmoothWindow& F, const FormKernel& g, int sign, double alpha, const PrecisionCtx& ctx) {
  double total = 0.0;
  for (const auto& B : voronoi_kernels(g, sign)) total += hankel_transform(F, B, alpha, ctx).value;
  return total;
}

int hankel_suggested_reductions(const SmoothWindow& F, const HankelKernel& B, double alpha) {
  if (!B.reducible() || F.kind() != SmoothWindow::Kind::bump) return 0;
  const BoundDerivs& norms = derivative_norms(F, B.order);
  int best = 0;
  double best_bound = norms[0];
  double factor = 1.0;
  for (int j = 1; j <= max_reductions; ++j) {
    factor *= 2.0 / alpha;
    const double bound = factor * norms[static_cast<std::size_t>(j)];
    if (bound < best_bound) {
      best_bound = bound;
      best = j;
    }
  }
  return best;
}

double hankel_decay_bound(const SmoothWindow& F, const HankelKernel& B, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "voronoi", "alpha must be positive");
  const double y0 = alpha * std::sqrt(F.lo());
  const double mass_bound = [&] {
    if (F.kind() == SmoothWindow::Kind::bump) return derivative_norms(F, 0)[0];
    PrecisionCtx c;
    c.target_tol = 1e-8;
    return integrate_compact([&](double x) { return std::abs(F(x)); }, F.lo(), F.hi(), c, 16).value;
  }();
  const double y_floor = std::max(y0, 1e-3);
  if (!B.reducible() || F.kind() != SmoothWindow::Kind::bump)
    return std::abs(B.prefactor) * mass_bound * bessel_sup(B.bessel, B.order, B.mu, y_floor);
  const BoundDerivs& norms = derivative_norms(F, B.order);
  double best = norms[0] * bessel_sup(B.bessel, B.order, B.mu, y_floor);
  double factor = 1.0;
  for (int j = 1; j <= bound_order; ++j) {
    factor *= 2.0 / alpha;
    best = std::min(best, factor * norms[static_cast<std::size_t>(j)] * bessel_sup(B.bessel, B.order + j, B.mu, y_floor));
  }
  return std::abs(B.prefactor) * best;
}

}  // namespace rsm
