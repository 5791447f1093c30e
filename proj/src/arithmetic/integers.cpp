#include <algorithm>
#include <cstdlib>

#include "rsm/arithmetic.hpp"

namespace rsm {

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t mod(std::int64_t a, std::int64_t m) noexcept {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(ErrorKind::ArgumentNotCoprime, "arithmetic", "no inverse modulo " + std::to_string(m));
  return mod(old_s, m);
}

std::int64_t ipow(std::int64_t base, int exp) noexcept {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "arithmetic", "factorize needs n >= 1");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

int divisor_count(std::int64_t n) {
  int d = 1;
  for (auto [p, e] : factorize(n)) d *= e + 1;
  return d;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> ds{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = ds.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

PrimeSieve::PrimeSieve(std::size_t n) : spf_(n + 1, 0) {
  for (std::size_t i = 2; i <= n; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      const std::size_t m = static_cast<std::size_t>(p) * i;
      if (p > spf_[i] || m > n) break;
      spf_[m] = p;
    }
  }
}

}  // namespace rsm
