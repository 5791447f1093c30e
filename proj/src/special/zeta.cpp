#include <cmath>
#include <numbers>

#include "rsm/special.hpp"

namespace rsm {

namespace {

constexpr double pi = std::numbers::pi;

// (e^z - 1)/z
cplx expm1_over(cplx z) {
  if (std::abs(z) < 1e-3) {
    cplx term = 1.0, acc = 0.0;
    for (int k = 1; k <= 8; ++k) {
      acc += term;
      term *= z / static_cast<double>(k + 1);
    }
    return acc;
  }
  return (std::exp(z) - 1.0) / z;
}

const std::vector<double>& em_coeffs() {
  // B_{2j} / (2j)!
  static const std::vector<double> c = [] {
    std::vector<double> v;
    double fact = 1.0;
    for (unsigned j = 1; j <= 40; ++j) {
      fact *= (2.0 * j - 1.0) * (2.0 * j);
      v.push_back(bernoulli_double(2 * j) / fact);
    }
    return v;
  }();
  return c;
}

// Euler-Maclaurin for zeta(s,a); `regular` drops the 1/(s-1) pole part.
cplx hurwitz_em(cplx s, double a, bool regular) {
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "special_functions", "hurwitz needs a > 0");
  // For Re s < 0 the head grows like N^{1-Re s} and cancels against the tail,
  // so keep it as short as convergence allows.
  const int pad = s.real() < 0.0 ? 12 : 30;
  const int N = std::max(pad, static_cast<int>(std::abs(s)) + pad);
  CompensatedSum<cplx> head;
  for (int n = 0; n < N; ++n) head.add(std::exp(-s * std::log(n + a)));
  const double x = N + a;
  const double lx = std::log(x);
  const cplx x_ms = std::exp(-s * lx);
  cplx pole_part;
  if (regular)
    pole_part = -lx * expm1_over((1.0 - s) * lx);  // ((x^{1-s}) - 1)/(s-1)
  else
    pole_part = x * x_ms / (s - 1.0);
  cplx tail = pole_part + 0.5 * x_ms;
  // sum_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
  cplx rising = s;  // (s)_{1}
  cplx xp = x_ms / x;
  const double inv_x2 = 1.0 / (x * x);
  const auto& c = em_coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const cplx term = c[j] * rising * xp;
    tail += term;
    if (std::abs(term) < 1e-18 * (std::abs(tail) + std::abs(head.value()) + 1e-300)) break;
    const double k = 2.0 * (j + 1);
    rising *= (s + (k - 1.0)) * (s + k);
    xp *= inv_x2;
  }
  return head.value() + tail;
}

}  // namespace

cplx hurwitz(cplx s, double a) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::PoleAtOne, "special_functions", "hurwitz pole at s=1");
  return hurwitz_em(s, a, false);
}

cplx hurwitz_regular(cplx s, double a) { return hurwitz_em(s, a, true); }

cplx zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::PoleAtOne, "special_functions", "zeta pole at s=1");
  if (s.real() < 0.0) {
    const cplx one_minus = 1.0 - s;
    return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(0.5 * pi * s) * gamma_complex(one_minus) *
           zeta(one_minus);
  }
  return hurwitz_em(s, 1.0, false);
}

cplx dirichlet_l(cplx s, const PrimitiveCharacter& chi) {
  if (chi.is_trivial()) return zeta(s);
  const int N = chi.modulus();
  CompensatedSum<cplx> acc;
  for (int a = 1; a <= N; ++a) {
    const cplx v = chi(a);
    if (v == cplx(0.0, 0.0)) continue;
    acc.add(v * hurwitz_regular(s, static_cast<double>(a) / N));
  }
  return std::exp(-s * std::log(static_cast<double>(N))) * acc.value();
}

}  // namespace rsm
