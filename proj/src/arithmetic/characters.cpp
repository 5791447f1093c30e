#include <cmath>
#include <numbers>

#include "rsm/arithmetic.hpp"

namespace rsm {

namespace {

cplx snap(cplx z) {
  auto clean = [](double v) {
    if (std::abs(v) < 1e-14) return 0.0;
    if (std::abs(v - 1.0) < 1e-14) return 1.0;
    if (std::abs(v + 1.0) < 1e-14) return -1.0;
    return v;
  };
  return {clean(z.real()), clean(z.imag())};
}

// One cyclic factor of (Z/N)^x: generator data and a discrete-log table mod q.
struct CyclicFactor {
  std::int64_t q;      // prime power modulus of the component
  std::int64_t order;  // group order of this cyclic factor
  std::vector<int> log;  // log[n mod q] or -1 for non-units / outside the factor
};

std::vector<CyclicFactor> unit_group_factors(int N) {
  std::vector<CyclicFactor> out;
  for (auto [p, e] : factorize(N)) {
    const std::int64_t q = ipow(p, e);
    if (p == 2) {
      if (e == 1) continue;
      // (Z/2^e)^x = <-1> x <5>; store both factors with logs read off jointly.
      CyclicFactor minus{q, 2, std::vector<int>(q, -1)};
      CyclicFactor five{q, e >= 3 ? ipow(2, e - 2) : 1, std::vector<int>(q, -1)};
      std::int64_t pw = 1;
      for (std::int64_t b = 0; b < five.order; ++b) {
        minus.log[pw] = 0;
        five.log[pw] = static_cast<int>(b);
        const std::int64_t neg = mod(-pw, q);
        minus.log[neg] = 1;
        five.log[neg] = static_cast<int>(b);
        pw = pw * 5 % q;
      }
      out.push_back(std::move(minus));
      if (five.order > 1) out.push_back(std::move(five));
      continue;
    }
    const std::int64_t order = q / p * (p - 1);
    // Smallest primitive root mod q.
    std::int64_t g = 2;
    for (;; ++g) {
      if (gcd(g, p) != 1) continue;
      std::int64_t pw = 1, k = 0;
      do {
        pw = pw * g % q;
        ++k;
      } while (pw != 1);
      if (k == order) break;
    }
    CyclicFactor f{q, order, std::vector<int>(q, -1)};
    std::int64_t pw = 1;
    for (std::int64_t k = 0; k < order; ++k) {
      f.log[pw] = static_cast<int>(k);
      pw = pw * g % q;
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

PrimitiveCharacter::PrimitiveCharacter(int modulus, std::vector<cplx> values, std::string label)
    : modulus_(modulus), values_(std::move(values)), label_(std::move(label)) {
  if (modulus_ < 1 || values_.size() != static_cast<std::size_t>(modulus_))
    throw Error(ErrorKind::InvalidArgument, "arithmetic", "character table size must equal modulus");
}

PrimitiveCharacter PrimitiveCharacter::trivial() { return PrimitiveCharacter(1, {cplx(1.0, 0.0)}, "1.0"); }

bool PrimitiveCharacter::is_real() const noexcept {
  for (const auto& v : values_)
    if (v.imag() != 0.0) return false;
  return true;
}

cplx PrimitiveCharacter::local_value(std::int64_t p, std::int64_t n) const {
  std::int64_t q = 1;
  std::int64_t rest = modulus_;
  while (rest % p == 0) {
    rest /= p;
    q *= p;
  }
  if (q == 1) return 1.0;
  if (n % p == 0) return 0.0;
  // n' = n mod q, n' = 1 mod rest
  const std::int64_t t = mod((1 - n) * mod_inverse(q, rest), rest);
  const std::int64_t lifted = mod(n + q * t, modulus_);
  return (*this)(lifted);
}

std::vector<PrimitiveCharacter> all_characters(int N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "arithmetic", "modulus must be >= 1");
  const auto factors = unit_group_factors(N);
  std::vector<PrimitiveCharacter> out;
  std::vector<std::int64_t> exps(factors.size(), 0);
  int index = 0;
  while (true) {
    std::vector<cplx> values(N, cplx(0.0, 0.0));
    for (int n = 0; n < N; ++n) {
      if (gcd(n, N) != 1) continue;
      double phase = 0.0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const int lg = factors[i].log[mod(n, factors[i].q)];
        phase += static_cast<double>(exps[i] * lg % factors[i].order) / factors[i].order;
      }
      values[n] = snap(std::polar(1.0, 2.0 * std::numbers::pi * (phase - std::floor(phase))));
    }
    out.emplace_back(N, std::move(values), std::to_string(N) + "." + std::to_string(index++));
    std::size_t i = 0;
    for (; i < factors.size(); ++i) {
      if (++exps[i] < factors[i].order) break;
      exps[i] = 0;
    }
    if (i == factors.size()) break;
  }
  return out;
}

bool is_even(const PrimitiveCharacter& chi) { return chi(-1) == cplx(1.0, 0.0); }

bool is_primitive(const PrimitiveCharacter& chi) {
  const int N = chi.modulus();
  if (N == 1) return true;
  for (auto [p, e] : factorize(N)) {
    // Induced from N/p iff trivial on units congruent to 1 mod N/p.
    const std::int64_t step = N / p;
    bool trivial_on_kernel = true;
    for (std::int64_t k = 0; k < p && trivial_on_kernel; ++k) {
      const std::int64_t n = 1 + k * step;
      if (gcd(n, N) != 1) continue;
      if (std::abs(chi(n) - cplx(1.0, 0.0)) > 1e-12) trivial_on_kernel = false;
    }
    if (trivial_on_kernel) return false;
  }
  return true;
}

std::vector<PrimitiveCharacter> primitive_even_characters(int N) {
  std::vector<PrimitiveCharacter> out;
  for (auto& chi : all_characters(N))
    if (is_primitive(chi) && is_even(chi)) out.push_back(std::move(chi));
  return out;
}

}  // namespace rsm
