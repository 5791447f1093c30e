#include <cmath>
#include <numbers>

#include "rsm/arithmetic.hpp"

namespace rsm {

namespace {

std::vector<cplx> roots_of_unity(std::int64_t c) {
  std::vector<cplx> e(static_cast<std::size_t>(c));
  for (std::int64_t j = 0; j < c; ++j) e[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / c);
  return e;
}

std::int64_t phase_index(std::int64_t m, std::int64_t dbar, std::int64_t n, std::int64_t d, std::int64_t c) {
  const __int128 v = static_cast<__int128>(mod(m, c)) * dbar + static_cast<__int128>(mod(n, c)) * d;
  return static_cast<std::int64_t>(v % c);
}

}  // namespace

cplx kloosterman(const PrimitiveCharacter& chi, std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c < 1) throw Error(ErrorKind::InvalidArgument, "arithmetic", "kloosterman modulus must be >= 1");
  if (c % chi.modulus() != 0)
    throw Error(ErrorKind::ModulusNotDivisible, "arithmetic",
                "character modulus " + std::to_string(chi.modulus()) + " does not divide c=" + std::to_string(c));
  if (c == 1) return chi(0);
  const auto e = roots_of_unity(c);
  CompensatedSum<cplx> acc;
  for (std::int64_t d = 1; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const std::int64_t dbar = mod_inverse(d, c);
    acc.add(chi(d) * e[phase_index(m, dbar, n, d, c)]);
  }
  return acc.value();
}

double kloosterman_trivial(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c < 1) throw Error(ErrorKind::InvalidArgument, "arithmetic", "kloosterman modulus must be >= 1");
  if (c == 1) return 1.0;
  std::vector<double> cosines(static_cast<std::size_t>(c));
  for (std::int64_t j = 0; j < c; ++j) cosines[j] = std::cos(2.0 * std::numbers::pi * j / c);
  CompensatedSum<double> acc;
  for (std::int64_t d = 1; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    acc.add(cosines[phase_index(m, mod_inverse(d, c), n, d, c)]);
  }
  return acc.value();
}

double EisensteinEigenvalues::operator()(std::int64_t n) const { return eisenstein_lambda(r_, n); }

double eisenstein_lambda(double r, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "arithmetic", "lambda needs n >= 1");
  CompensatedSum<double> acc;
  for (std::int64_t a : divisors(n)) acc.add(std::cos(r * std::log(static_cast<double>(a) * a / n)));
  return acc.value();
}

std::vector<double> EisensteinEigenvalues::table(std::size_t n_max) const {
  PrimeSieve sieve(n_max);
  std::vector<double> lam(n_max + 1, 0.0);
  if (n_max >= 1) lam[1] = 1.0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const std::size_t p = sieve.spf(n);
    std::size_t pe = p, m = n / p;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    if (m > 1) {
      lam[n] = lam[pe] * lam[m];
      continue;
    }
    // prime power: U_e(cos theta) recurrence
    const double two_cos = 2.0 * std::cos(r_ * std::log(static_cast<double>(p)));
    lam[n] = (n == p) ? two_cos : two_cos * lam[n / p] - lam[n / p / p];
  }
  return lam;
}

}  // namespace rsm
