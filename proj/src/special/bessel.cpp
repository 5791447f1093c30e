#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "rsm/special.hpp"

namespace rsm {

namespace {

constexpr double pi = std::numbers::pi;
using lcplx = std::complex<long double>;

double im_j_series(double mu, double x) {
  // J_{i mu}(x) = (x/2)^{i mu} / Gamma(1 + i mu) * sum_m (-x^2/4)^m / (m! (1 + i mu)_m)
  const lcplx nu(0.0L, static_cast<long double>(mu));
  const long double q = -0.25L * static_cast<long double>(x) * static_cast<long double>(x);
  lcplx term = 1.0L, acc = 1.0L;
  for (int m = 1; m < 400; ++m) {
    term *= q / (static_cast<long double>(m) * (static_cast<long double>(m) + nu));
    acc += term;
    if (std::abs(term) < 1e-21L * std::abs(acc) && m > 2) break;
  }
  const cplx prefactor = std::exp(cplx(0.0, mu) * std::log(0.5 * x) - log_gamma(cplx(1.0, mu)));
  const cplx value = prefactor * cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  return value.imag();
}

double im_j_hankel(double mu, double x) {
  const cplx nu(0.0, mu);
  const cplx four_nu2 = 4.0 * nu * nu;
  cplx P = 1.0, Q = 0.0;
  cplx a = 1.0;  // a_k(nu) / x^k
  double prev = 1e300;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (four_nu2 - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(a);
    if (mag > prev) break;
    prev = mag;
    // P collects even k with sign (-1)^{k/2}; Q odd k with sign (-1)^{(k-1)/2}.
    if (k % 2 == 0)
      P += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * a;
    else
      Q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * a;
    if (mag < 1e-18) break;
  }
  const cplx omega = x - nu * (0.5 * pi) - 0.25 * pi;
  const cplx value = std::sqrt(2.0 / (pi * x)) * (P * std::cos(omega) - Q * std::sin(omega));
  return value.imag();
}

constexpr double series_switch = 20.0;

}  // namespace

BesselOrder BesselOrder::integer(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "special_functions", "integer Bessel order must be >= 0");
  BesselOrder o;
  o.kind = Kind::integer;
  o.n = n;
  return o;
}

BesselOrder BesselOrder::imaginary(double two_r) {
  BesselOrder o;
  o.kind = Kind::imaginary;
  o.two_r = two_r;
  return o;
}

double bessel_j_imag_order_im(double mu, double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "special_functions", "Bessel argument must be > 0");
  if (mu == 0.0) return 0.0;
  if (x <= series_switch) return im_j_series(mu, x);
  return im_j_hankel(mu, x);
}

double bessel_k_imag_order(double mu, double x, const PrecisionCtx& ctx) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "special_functions", "Bessel argument must be > 0");
  if (mu == 0.0) return boost::math::cyl_bessel_k(0, x);
  // exp(-x cosh t) < 1e-320 beyond t_max.
  const double t_max = std::acosh(std::max(1.0, 740.0 / x)) + 1.0;
  const double scale = std::exp(-x);
  PrecisionCtx local = ctx.with_tol(std::max(1e-16, std::min(ctx.target_tol, 1e-13)) * std::max(scale, 1e-300));
  local.max_panels = std::max(ctx.max_panels, 20000);
  auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cos(mu * t); };
  const int panels = 2 + static_cast<int>(mu * t_max / pi);
  return integrate_compact(f, 0.0, t_max, local, panels).value;
}

double bessel_eval(BesselKind kind, BesselOrder order, double x, const PrecisionCtx& ctx) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "special_functions", "Bessel argument must be > 0");
  switch (kind) {
    case BesselKind::J:
      if (order.kind != BesselOrder::Kind::integer)
        throw Error(ErrorKind::InvalidArgument, "special_functions", "J is provided for integer order only");
      return boost::math::cyl_bessel_j(order.n, x);
    case BesselKind::Y: {
      if (order.kind == BesselOrder::Kind::integer) return boost::math::cyl_neumann(order.n, x);
      const double r = 0.5 * order.two_r;
      if (r == 0.0) return 2.0 * boost::math::cyl_neumann(0, x);
      return 2.0 / std::tanh(pi * r) * bessel_j_imag_order_im(order.two_r, x);
    }
    case BesselKind::K:
      if (order.kind == BesselOrder::Kind::integer) return boost::math::cyl_bessel_k(order.n, x);
      return bessel_k_imag_order(order.two_r, x, ctx);
  }
  return 0.0;
}

FormKernel FormKernel::holomorphic(int weight) {
  if (weight < 2 || weight % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "special_functions", "holomorphic weight must be even and >= 2");
  FormKernel g;
  g.kind = Kind::holomorphic;
  g.weight = weight;
  return g;
}

FormKernel FormKernel::spectral(double r, int eps) {
  if (eps != 1 && eps != -1) throw Error(ErrorKind::InvalidArgument, "special_functions", "eps must be +-1");
  FormKernel g;
  g.kind = Kind::spectral;
  g.r = r;
  g.eps = eps;
  return g;
}

double voronoi_kernel(const FormKernel& g, int sign, double x, const PrecisionCtx& ctx) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "special_functions", "kernel argument must be > 0");
  if (g.kind == FormKernel::Kind::holomorphic) {
    if (sign < 0) return 0.0;
    const double ik = (g.weight / 2) % 2 == 0 ? 1.0 : -1.0;
    return 2.0 * pi * ik * boost::math::cyl_bessel_j(g.weight - 1, x);
  }
  if (sign > 0) {
    if (g.r == 0.0) return -2.0 * pi * boost::math::cyl_neumann(0, x);
    return -2.0 * pi * bessel_j_imag_order_im(2.0 * g.r, x) / std::sinh(pi * g.r);
  }
  return g.eps * 4.0 * std::cosh(pi * g.r) * bessel_k_imag_order(2.0 * g.r, x, ctx);
}

}  // namespace rsm
