#include <cmath>
#include <numbers>

#include "rsm/afe.hpp"

namespace rsm {

HChoice HChoice::r_vanishing(double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "afe", "r_vanishing needs r > 0");
  return {Kind::r_vanishing, r};
}

HChoice HChoice::parse(const std::string& name, double r) {
  if (name == "gauss") return gauss();
  if (name == "gauss_poly") return gauss_poly();
  if (name == "r_vanishing") return r_vanishing(r);
  throw Error(ErrorKind::InvalidArgument, "afe", "unknown H choice '" + name + "'");
}

cplx HChoice::operator()(cplx s) const {
  const cplx g = std::exp(s * s);
  switch (kind) {
    case Kind::gauss:
      return g;
    case Kind::gauss_poly:
      return g * (1.0 + s * s);
    case Kind::r_vanishing: {
      const cplx q = (s * s + r * r) / (r * r);
      return g * q * q;
    }
  }
  return g;
}

std::string HChoice::name() const {
  switch (kind) {
    case Kind::gauss:
      return "gauss";
    case Kind::gauss_poly:
      return "gauss_poly";
    case Kind::r_vanishing:
      return "r_vanishing";
  }
  return "?";
}

std::vector<double> gauss_log_derivatives(double u, int l_max) {
  std::vector<double> d(static_cast<std::size_t>(l_max) + 1, 0.0);
  d[0] = 0.5 * std::erfc(0.5 * u);
  if (l_max == 0) return d;
  // d^m/du^m e^{-u^2/4} = (-1)^m 2^{-m/2} He_m(u/sqrt 2) e^{-u^2/4}
  const double v = u / std::numbers::sqrt2;
  const double g = std::exp(-0.25 * u * u);
  const double lead = -0.5 / std::sqrt(std::numbers::pi);
  double he_prev = 1.0, he = v;  // He_0, He_1
  double scale = 1.0;
  for (int m = 0; m < l_max; ++m) {
    double hm;
    if (m == 0) {
      hm = 1.0;
    } else if (m == 1) {
      hm = he;
    } else {
      const double next = v * he - (m - 1) * he_prev;
      he_prev = he;
      he = next;
      hm = he;
    }
    d[static_cast<std::size_t>(m) + 1] = lead * ((m % 2 == 0) ? 1.0 : -1.0) * scale * hm * g;
    scale /= std::numbers::sqrt2;
  }
  return d;
}

GWeight::GWeight(HChoice h, int M, std::vector<cplx> eta, bool symmetrize)
    : h_(h), M_(M), eta_(std::move(eta)), symmetrized_(symmetrize) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "afe", "M must be >= 1");
  if (eta_.empty()) throw Error(ErrorKind::InvalidArgument, "afe", "empty eta list");
  poly_ = correction_polynomial(interleave_conjugates(eta_), M, symmetrize);
}

CorrectionTable GWeight::corrections() const {
  auto t = correction_coefficients(static_cast<int>(eta_.size()), M_);
  return symmetrized_ ? symmetrize(t) : t;
}

cplx GWeight::operator()(double x) const {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "afe", "G(x) needs x > 0");
  const int extra = h_.kind == HChoice::Kind::gauss ? 0 : (h_.kind == HChoice::Kind::gauss_poly ? 2 : 4);
  const int L = static_cast<int>(poly_.size()) - 1;
  const auto d = gauss_log_derivatives(std::log(x), L + extra);
  const double w2 = h_.kind == HChoice::Kind::gauss_poly ? 1.0 : 2.0 / (h_.r * h_.r);
  const double w4 = 1.0 / (h_.r * h_.r * h_.r * h_.r);
  cplx acc = 0.0;
  for (int l = 0; l <= L; ++l) {
    double dl = d[l];
    if (extra >= 2) dl += w2 * d[l + 2];
    if (extra == 4) dl += w4 * d[l + 4];
    acc += poly_[l] * dl;
  }
  return acc;
}

double GWeight::envelope(double x) const {
  const int extra = h_.kind == HChoice::Kind::gauss ? 0 : (h_.kind == HChoice::Kind::gauss_poly ? 2 : 4);
  const int L = static_cast<int>(poly_.size()) - 1;
  const auto d = gauss_log_derivatives(std::log(x), L + extra);
  const double w2 = h_.kind == HChoice::Kind::gauss_poly ? 1.0 : 2.0 / (h_.r * h_.r);
  const double w4 = 1.0 / (h_.r * h_.r * h_.r * h_.r);
  double acc = 0.0;
  for (int l = 0; l <= L; ++l) {
    double dl = std::abs(d[l]);
    if (extra >= 2) dl += w2 * std::abs(d[l + 2]);
    if (extra == 4) dl += w4 * std::abs(d[l + 4]);
    acc += std::abs(poly_[l]) * dl;
  }
  return acc;
}

cplx GWeight::mellin_factor(cplx s) const {
  cplx acc = 0.0, pw = 1.0;
  for (const cplx& c : poly_) {
    acc += c * pw;
    pw *= -s;
  }
  return acc;
}

cplx GWeight::mellin(cplx s) const {
  if (s == cplx(0.0, 0.0)) throw Error(ErrorKind::PoleAtZero, "afe", "Mellin transform of G has a pole at s = 0");
  return mellin_factor(s) * h_(s) / s;
}

cplx GWeight::eval_contour(double x, const PrecisionCtx& ctx, double sigma) const {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "afe", "G(x) needs x > 0");
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "afe", "contour must lie right of 0");
  const double lx = std::log(x);
  auto integrand = [&](double y) {
    const cplx s(sigma, y);
    return std::exp(-s * lx) * mellin(s);
  };
  // |H| ~ exp(sigma^2 - y^2) along the line.
  const double Y = std::sqrt(sigma * sigma + 60.0 + 2.0 * std::abs(lx) * sigma) + 4.0;
  const auto r = integrate_compact(integrand, -Y, Y, ctx.with_tol(std::max(ctx.target_tol * 1e-2, 1e-15)), 16);
  if (!std::isfinite(std::abs(r.value))) throw Error(ErrorKind::NonConvergence, "afe", "contour integral diverged");
  return r.value / (2.0 * std::numbers::pi);
}

GWeight gweight_build(HChoice h, int M, std::vector<cplx> eta, bool symmetrize) {
  return GWeight(h, M, std::move(eta), symmetrize);
}

cplx gweight_eval(const GWeight& G, double x, const PrecisionCtx&) { return G(x); }

cplx gweight_mellin(const GWeight& G, cplx s) { return G.mellin(s); }

}  // namespace rsm
