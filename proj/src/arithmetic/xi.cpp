#include <cmath>
#include <map>
#include <numbers>

#include "rsm/arithmetic.hpp"
#include "rsm/special.hpp"

namespace rsm {

namespace {

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

cplx cpow_real(double base, cplx exponent) { return std::exp(exponent * std::log(base)); }

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "arithmetic", "sign must be +1 or -1");
}

// Local factor at p of the inner f-sum for g = p^vg (see xi_inner_sum_local).
cplx local_factor(std::int64_t p, int e, int nu, int vg, std::int64_t d1, std::int64_t d2,
                  const PrimitiveCharacter& chi, int sign) {
  const std::int64_t pe = ipow(p, e), pn = ipow(p, nu);
  const std::int64_t gp = ipow(p, vg);
  const int target = valuation(d1, p);
  const std::int64_t d1_inv = nu > 0 ? mod_inverse(d1, pn) : 0;
  cplx acc = 0.0;
  for (std::int64_t f = 0; f < pe; ++f) {
    if (e > 0 && f % p == 0) continue;
    const std::int64_t v = gp * f - sign * d2;
    if (std::min(valuation(v, p), e) != target) continue;
    if (nu == 0) {
      acc += 1.0;
    } else {
      const std::int64_t y = static_cast<std::int64_t>(static_cast<__int128>(mod(v, pn)) * d1_inv % pn);
      acc += chi.local_value(p, y);
    }
  }
  return acc;
}

struct TupleLocal {
  std::int64_t p;
  int e, nu;
  std::vector<cplx> by_valuation;  // index min(v_p(g), e + nu)
};

std::vector<TupleLocal> tuple_locals(std::int64_t d1, std::int64_t d2, std::int64_t h, const PrimitiveCharacter& chi,
                                     int sign) {
  const std::int64_t Q = d1 * d1 * d2 * h;
  std::map<std::int64_t, int> primes;
  for (auto [p, e] : factorize(Q)) primes[p] = e;
  for (auto [p, e] : factorize(chi.modulus())) primes.emplace(p, 0);
  std::vector<TupleLocal> out;
  for (auto [p, e] : primes) {
    const int nu = valuation(chi.modulus(), p);
    TupleLocal t{p, e, nu, {}};
    for (int vg = 0; vg <= e + nu; ++vg) t.by_valuation.push_back(local_factor(p, e, nu, vg, d1, d2, chi, sign));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

cplx xi_closed(cplx s, double r, const PrimitiveCharacter& chi, int sign) {
  check_sign(sign);
  const cplx I(0.0, 1.0);
  const cplx a = 2.0 * s - 2.0 * I * r;
  const cplx b = 1.0 + 2.0 * s + 2.0 * I * r;
  if (a == cplx(1.0, 0.0) || b == cplx(1.0, 0.0))
    throw Error(ErrorKind::PoleAtS, "arithmetic", "xi_closed evaluated at a zeta pole");
  const int N = chi.modulus();
  cplx value = zeta(a) * zeta(b) * cpow_real(N, -2.0 * s + 2.0 * I * r);
  for (auto [p, e] : factorize(N)) value *= 1.0 - cpow_real(static_cast<double>(p), -2.0 - 4.0 * I * r);
  return value;
}

cplx xi_inner_sum(std::int64_t d1, std::int64_t d2, std::int64_t g, std::int64_t h, const PrimitiveCharacter& chi,
                  int sign) {
  check_sign(sign);
  const std::int64_t Q = d1 * d1 * d2 * h;
  CompensatedSum<cplx> acc;
  for (std::int64_t f = 0; f < Q; ++f) {
    if (gcd(f, Q) != 1) continue;
    const std::int64_t v = g * f - sign * d2;
    if (gcd(v, Q) != d1) continue;
    acc.add(chi(v / d1));
  }
  return acc.value();
}

cplx xi_inner_sum_local(std::int64_t d1, std::int64_t d2, std::int64_t g, std::int64_t h,
                        const PrimitiveCharacter& chi, int sign) {
  check_sign(sign);
  if (gcd(d1 * d2, chi.modulus()) != 1) return xi_inner_sum(d1, d2, g, h, chi, sign);
  if ((g % chi.modulus()) * (h % chi.modulus()) % chi.modulus() != 0)
    throw Error(ErrorKind::InvalidArgument, "arithmetic", "gh must be divisible by N");
  cplx prod = 1.0;
  for (const auto& t : tuple_locals(d1, d2, h, chi, sign))
    prod *= t.by_valuation[std::min(valuation(g, t.p), t.e + t.nu)];
  return prod;
}

cplx restricted_f_sum(std::int64_t d1, std::int64_t d2, std::int64_t g, std::int64_t h, std::int64_t m1,
                      std::int64_t m2, const PrimitiveCharacter& chi, int sign) {
  check_sign(sign);
  if (d1 < 1 || d2 < 1 || g < 1 || h < 1)
    throw Error(ErrorKind::InvalidArgument, "arithmetic", "d1, d2, g, h must be positive");
  if (gcd(d1, d2) != 1 || gcd(d1, g) != 1 || gcd(d2, g) != 1)
    throw Error(ErrorKind::ArgumentNotCoprime, "arithmetic", "d1, d2, g must be pairwise coprime");
  if ((g * h) % chi.modulus() != 0) throw Error(ErrorKind::InvalidArgument, "arithmetic", "gh must be divisible by N");
  const std::int64_t Q = d1 * d1 * d2 * h;
  const std::int64_t phase_mod = d1 * h;
  const std::int64_t dm = mod(m1 - m2, phase_mod);
  CompensatedSum<cplx> acc;
  for (std::int64_t f = 0; f < Q; ++f) {
    if (gcd(f, Q) != 1) continue;
    if (gcd(g - sign * d2 * f, Q) != d1) continue;
    const std::int64_t fbar = mod_inverse(f, Q);
    const std::int64_t v = g * fbar - sign * d2;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(dm * mod(f, phase_mod) % phase_mod) / phase_mod;
    acc.add(chi(v / d1) * std::polar(1.0, angle));
  }
  return acc.value();
}

XiBruteforceResult xi_bruteforce(cplx s, double r, const PrimitiveCharacter& chi, int sign, std::int64_t X,
                                 const XiBruteforceOptions& opts) {
  check_sign(sign);
  if (!(s.real() > 0.5)) throw Error(ErrorKind::InvalidArgument, "arithmetic", "xi_bruteforce needs Re s > 1/2");
  if (X < 1) throw Error(ErrorKind::InvalidArgument, "arithmetic", "cutoff X must be >= 1");
  const cplx I(0.0, 1.0);
  const cplx lambda = 2.0 + 2.0 * s + 2.0 * I * r;
  const cplx mu = 2.0 * s - 2.0 * I * r;
  const std::int64_t N = chi.modulus();
  const std::int64_t X_prev = std::max<std::int64_t>(1, X / 10);

  std::vector<cplx> g_pow(static_cast<std::size_t>(X) + 1);
  std::vector<double> g_abs(static_cast<std::size_t>(X) + 1);
  for (std::int64_t g = 1; g <= X; ++g) {
    g_pow[g] = cpow_real(static_cast<double>(g), -mu);
    g_abs[g] = std::abs(g_pow[g]);
  }

  // delta-sum factors out of the rest.
  cplx delta_sum = 0.0, delta_sum_prev = 0.0;
  double delta_abs = 0.0;
  for (std::int64_t d = 1; d <= X; ++d) {
    if (gcd(d, N) != 1) continue;
    const cplx term = cpow_real(static_cast<double>(d), -(lambda + mu));
    delta_sum += term;
    delta_abs += std::abs(term);
    if (d <= X_prev) delta_sum_prev += term;
  }
  double g_abs_sum = 0.0;
  for (std::int64_t g = 1; g <= X; ++g) g_abs_sum += g_abs[g];

  // Per-variable pieces of the factorized contribution bound
  //   B(d1,d2,h) = (d1 d2 h)^{1-Re lambda} / (phi(d1) phi(d2)) * sum_g |g^-mu| * sum_delta |.|
  const double rl = lambda.real();
  std::vector<double> phi(static_cast<std::size_t>(X) + 1);
  for (std::int64_t d = 1; d <= X; ++d) phi[d] = static_cast<double>(d);
  for (std::int64_t p = 2; p <= X; ++p) {
    if (phi[p] != static_cast<double>(p)) continue;
    for (std::int64_t m = p; m <= X; m += p) phi[m] -= phi[m] / p;
  }
  auto dpart = [&](std::int64_t d) { return std::pow(static_cast<double>(d), 1.0 - rl) / phi[d]; };
  auto hpart = [&](std::int64_t h) { return std::pow(static_cast<double>(h), 1.0 - rl); };
  // Prefix sums so that whole skipped ranges can be charged at once.
  std::vector<double> dprefix(static_cast<std::size_t>(X) + 1, 0.0), hprefix(static_cast<std::size_t>(X) + 1, 0.0);
  for (std::int64_t d = 1; d <= X; ++d) {
    dprefix[d] = dprefix[d - 1] + dpart(d);
    hprefix[d] = hprefix[d - 1] + hpart(d);
  }
  const double dtotal = dprefix[X], htotal = hprefix[X];
  const double zfac = g_abs_sum * delta_abs;
  const double thr = opts.prune_threshold;
  double pruned = 0.0;

  CompensatedSum<cplx> total, total_prev;
  std::size_t tuples = 0;
  for (std::int64_t d1 = 1; d1 <= X; ++d1) {
    const double b1 = dpart(d1);
    if (std::pow(static_cast<double>(d1), 1.0 - rl) * zfac < thr) {
      pruned += (dtotal - dprefix[d1 - 1]) * dtotal * htotal * zfac;
      break;
    }
    if (gcd(d1, N) != 1) continue;
    for (std::int64_t d2 = 1; d2 <= X; ++d2) {
      if (std::pow(static_cast<double>(d1 * d2), 1.0 - rl) * zfac < thr) {
        pruned += b1 * (dtotal - dprefix[d2 - 1]) * htotal * zfac;
        break;
      }
      if (gcd(d2, N) != 1 || gcd(d1, d2) != 1) continue;
      const double b12 = b1 * dpart(d2);
      const cplx chi_pair = chi(d1) * std::conj(chi(d2));
      for (std::int64_t h = 1; h <= X; ++h) {
        const double bound = b12 * hpart(h) * zfac;
        if (std::pow(static_cast<double>(d1 * d2 * h), 1.0 - rl) * zfac < thr) {
          pruned += b12 * (htotal - hprefix[h - 1]) * zfac;
          break;
        }
        if (bound < thr) {
          pruned += bound;
          continue;
        }
        ++tuples;
        // phi(gh)/phi(d1 d2 g h) for (g, d1 d2) = 1 depends only on d1 d2 and h.
        double ratio = 1.0 / static_cast<double>(d1 * d2);
        for (auto [p, e] : factorize(d1 * d2))
          if (h % p != 0) ratio /= (1.0 - 1.0 / static_cast<double>(p));
        const cplx weight = chi_pair * cpow_real(static_cast<double>(d1 * d2 * h), -lambda) * ratio;
        const auto locals = tuple_locals(d1, d2, h, chi, sign);
        const std::int64_t need_g = N / gcd(N, h);  // N | gh  <=>  need_g | g
        const std::int64_t coprime_to = d1 * d2;
        CompensatedSum<cplx> gsum, gsum_prev;
        for (std::int64_t g = need_g; g <= X; g += need_g) {
          if (coprime_to > 1 && gcd(g, coprime_to) != 1) continue;
          cplx S = 1.0;
          for (const auto& t : locals) {
            int v = 0;
            std::int64_t gg = g;
            const int cap = t.e + t.nu;
            while (v < cap && gg % t.p == 0) {
              gg /= t.p;
              ++v;
            }
            S *= t.by_valuation[v];
            if (S == cplx(0.0, 0.0)) break;
          }
          if (S == cplx(0.0, 0.0)) continue;
          const cplx term = S * g_pow[g];
          gsum.add(term);
          if (g <= X_prev) gsum_prev.add(term);
        }
        total.add(weight * gsum.value());
        if (d1 <= X_prev && d2 <= X_prev && h <= X_prev) total_prev.add(weight * gsum_prev.value());
      }
    }
  }
  XiBruteforceResult out;
  out.value = delta_sum * total.value();
  out.value_previous_decade = delta_sum_prev * total_prev.value();
  out.tail_estimate = std::abs(out.value - out.value_previous_decade);
  out.pruned_bound = pruned;
  out.tuples = tuples;
  return out;
}

}  // namespace rsm
