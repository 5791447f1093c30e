#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rsm/numerics.hpp"

namespace rsm {

// ---- integer utilities ------------------------------------------------------

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;
std::int64_t mod(std::int64_t a, std::int64_t m) noexcept;  // result in [0, m)
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);   // throws ArgumentNotCoprime
std::int64_t ipow(std::int64_t base, int exp) noexcept;
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
int divisor_count(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

// Smallest-prime-factor table for [0, n].
class PrimeSieve {
 public:
  explicit PrimeSieve(std::size_t n);
  std::size_t limit() const noexcept { return spf_.size() - 1; }
  std::uint32_t spf(std::size_t m) const { return spf_.at(m); }
  bool is_prime(std::size_t m) const { return m >= 2 && spf_.at(m) == m; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// ---- characters -------------------------------------------------------------

class PrimitiveCharacter {
 public:
  PrimitiveCharacter(int modulus, std::vector<cplx> values, std::string label);
  static PrimitiveCharacter trivial();

  int modulus() const noexcept { return modulus_; }
  const std::string& label() const noexcept { return label_; }
  bool is_trivial() const noexcept { return modulus_ == 1; }
  cplx operator()(std::int64_t n) const noexcept { return values_[static_cast<std::size_t>(mod(n, modulus_))]; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  // The component of this character at the prime p, as a function on Z.
  cplx local_value(std::int64_t p, std::int64_t n) const;
  bool is_real() const noexcept;

 private:
  int modulus_;
  std::vector<cplx> values_;
  std::string label_;
};

// All even primitive characters modulo N in a fixed order.
std::vector<PrimitiveCharacter> primitive_even_characters(int N);
// All Dirichlet characters mod N (used for enumeration tests).
std::vector<PrimitiveCharacter> all_characters(int N);
bool is_primitive(const PrimitiveCharacter& chi);
bool is_even(const PrimitiveCharacter& chi);

// ---- exponential sums -------------------------------------------------------

cplx kloosterman(const PrimitiveCharacter& chi, std::int64_t m, std::int64_t n, std::int64_t c);
// Untwisted Kloosterman sum (real) via a root-of-unity table.
double kloosterman_trivial(std::int64_t m, std::int64_t n, std::int64_t c);

// ---- Eisenstein Hecke eigenvalues ---------------------------------------------

class EisensteinEigenvalues {
 public:
  explicit EisensteinEigenvalues(double r) : r_(r) {}
  double r() const noexcept { return r_; }
  double operator()(std::int64_t n) const;
  // lambda(1..n_max) by a multiplicative sieve; index 0 unused.
  std::vector<double> table(std::size_t n_max) const;

 private:
  double r_;
};

double eisenstein_lambda(double r, std::int64_t n);

// ---- the Xi identity --------------------------------------------------------

cplx xi_closed(cplx s, double r, const PrimitiveCharacter& chi, int sign);

struct XiBruteforceOptions {
  // Tuples (d1,d2,h) whose absolute contribution bound falls below this are skipped.
  double prune_threshold = 1e-12;
};

struct XiBruteforceResult {
  cplx value;
  cplx value_previous_decade;  // same sum with cutoff X/10
  double tail_estimate;        // |value - value_previous_decade|
  double pruned_bound;         // bound on the total contribution of skipped tuples
  std::size_t tuples = 0;
};

XiBruteforceResult xi_bruteforce(cplx s, double r, const PrimitiveCharacter& chi, int sign,
                                 std::int64_t X, const XiBruteforceOptions& opts = {});

// Literal enumeration of f mod d1^2 d2 h in the Xi definition.
cplx xi_inner_sum(std::int64_t d1, std::int64_t d2, std::int64_t g, std::int64_t h,
                  const PrimitiveCharacter& chi, int sign);
// The same sum through the prime-by-prime factorization.
cplx xi_inner_sum_local(std::int64_t d1, std::int64_t d2, std::int64_t g, std::int64_t h,
                        const PrimitiveCharacter& chi, int sign);

// Sum over f mod d1^2 d2 h (f a unit) with (g - sign*d2*f, d1^2 d2 h) = d1 of
// chi((g*fbar - sign*d2)/d1) e((m1-m2) f/(d1 h)).
cplx restricted_f_sum(std::int64_t d1, std::int64_t d2, std::int64_t g, std::int64_t h,
                      std::int64_t m1, std::int64_t m2, const PrimitiveCharacter& chi, int sign);

}  // namespace rsm
