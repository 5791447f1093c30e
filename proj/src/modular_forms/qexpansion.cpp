#include <algorithm>
#include <cstring>

#include "rsm/modular_forms.hpp"

namespace rsm {

namespace {

constexpr std::size_t limb_bits = 8 * sizeof(mp_limb_t);

std::size_t max_bits(const std::vector<mpz_class>& v) {
  std::size_t bits = 0;
  for (const auto& x : v) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  return bits;
}

// Signed Kronecker substitution: sum v_i 2^{i*B} with B = slot_limbs limbs.
mpz_class pack(const std::vector<mpz_class>& v, std::size_t slot_limbs) {
  std::vector<mp_limb_t> pos(v.size() * slot_limbs, 0), neg(v.size() * slot_limbs, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    auto& dst = sgn(v[i]) > 0 ? pos : neg;
    any_neg |= sgn(v[i]) < 0;
    std::size_t count = 0;
    mpz_export(dst.data() + i * slot_limbs, &count, -1, sizeof(mp_limb_t), 0, 0, v[i].get_mpz_t());
  }
  mpz_class out, minus;
  mpz_import(out.get_mpz_t(), pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  if (any_neg) {
    mpz_import(minus.get_mpz_t(), neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
    out -= minus;
  }
  return out;
}

// Inverse of pack for slot values in (-2^{B-1}, 2^{B-1}); borrows ripple upward.
void unpack(const mpz_class& packed, std::size_t slot_limbs, std::vector<mpz_class>& out) {
  const int sign = sgn(packed);
  const mpz_class mag = abs(packed);
  const std::size_t total = mpz_size(mag.get_mpz_t());
  const mp_limb_t* data = mpz_limbs_read(mag.get_mpz_t());
  mpz_class slot, full, half;
  mpz_setbit(full.get_mpz_t(), slot_limbs * limb_bits);
  mpz_setbit(half.get_mpz_t(), slot_limbs * limb_bits - 1);
  int carry = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t lo = i * slot_limbs;
    if (lo >= total) {
      slot = 0;
    } else {
      mpz_import(slot.get_mpz_t(), std::min(slot_limbs, total - lo), -1, sizeof(mp_limb_t), 0, 0, data + lo);
    }
    slot += carry;
    if (slot >= half) {
      slot -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = sign < 0 ? mpz_class(-slot) : slot;
  }
}

void check_same_weight(const QExpansion& a, const QExpansion& b) {
  if (a.weight() != b.weight())
    throw Error(ErrorKind::InvalidArgument, "modular_forms", "q-expansions of different weight");
}

}  // namespace

std::vector<mpz_class> series_multiply(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                       std::size_t precision) {
  std::vector<mpz_class> out(precision);
  if (a.empty() || b.empty() || precision == 0) return out;
  std::vector<mpz_class> aa(a.begin(), a.begin() + std::min(a.size(), precision));
  std::vector<mpz_class> bb(b.begin(), b.begin() + std::min(b.size(), precision));
  const std::size_t n = std::min(aa.size(), bb.size());
  std::size_t log_n = 0;
  while ((std::size_t{1} << log_n) < n) ++log_n;
  const std::size_t bits = max_bits(aa) + max_bits(bb) + log_n + 2;
  const std::size_t slot_limbs = (bits + limb_bits - 1) / limb_bits;
  const mpz_class ap = pack(aa, slot_limbs);
  const mpz_class product = (&a == &b) ? mpz_class(ap * ap) : mpz_class(ap * pack(bb, slot_limbs));
  unpack(product, slot_limbs, out);
  return out;
}

QExpansion::QExpansion(int weight, std::vector<mpz_class> coeffs) : weight_(weight), coeffs_(std::move(coeffs)) {}

QExpansion QExpansion::operator+(const QExpansion& other) const {
  check_same_weight(*this, other);
  const std::size_t p = std::min(precision(), other.precision());
  std::vector<mpz_class> c(p);
  for (std::size_t i = 0; i < p; ++i) c[i] = coeffs_[i] + other.coeffs_[i];
  return {weight_, std::move(c)};
}

QExpansion QExpansion::operator-(const QExpansion& other) const { return *this + other.scaled(-1); }

QExpansion QExpansion::operator*(const QExpansion& other) const {
  const std::size_t p = std::min(precision(), other.precision());
  return {weight_ + other.weight_, series_multiply(coeffs_, other.coeffs_, p)};
}

QExpansion QExpansion::scaled(const mpz_class& factor) const {
  std::vector<mpz_class> c(coeffs_);
  for (auto& x : c) x *= factor;
  return {weight_, std::move(c)};
}

QExpansion QExpansion::truncated(std::size_t p) const {
  std::vector<mpz_class> c(coeffs_.begin(), coeffs_.begin() + std::min(p, precision()));
  return {weight_, std::move(c)};
}

QExpansion QExpansion::hecke(std::int64_t p) const {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "modular_forms", "Hecke index must be a prime");
  const std::size_t out_prec = (precision() + p - 1) / p;
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(weight_ - 1));
  std::vector<mpz_class> c(out_prec);
  for (std::size_t n = 0; n < out_prec; ++n) {
    c[n] = coeffs_[n * p];
    if (n % p == 0) c[n] += pk * coeffs_[n / p];
  }
  return {weight_, std::move(c)};
}

QExpansion eisenstein_series(int k, std::size_t precision) {
  if (k < 4 || k % 2 != 0) throw Error(ErrorKind::InvalidArgument, "modular_forms", "Eisenstein weight must be even >= 4");
  // E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n; the factor is an integer only for k = 4, 6, 8, 10, 14.
  const mpq_class factor = mpq_class(-2 * k) / bernoulli(static_cast<unsigned>(k));
  if (factor.get_den() != 1)
    throw Error(ErrorKind::InvalidArgument, "modular_forms", "E_k has non-integral coefficients for this k");
  std::vector<mpz_class> sigma(precision, 0);
  mpz_class dk;
  for (std::size_t d = 1; d < precision; ++d) {
    mpz_ui_pow_ui(dk.get_mpz_t(), d, static_cast<unsigned long>(k - 1));
    for (std::size_t m = d; m < precision; m += d) sigma[m] += dk;
  }
  std::vector<mpz_class> c(precision);
  if (precision > 0) c[0] = 1;
  for (std::size_t n = 1; n < precision; ++n) c[n] = factor.get_num() * sigma[n];
  return {k, std::move(c)};
}

QExpansion delta_series(std::size_t precision) {
  // q * (prod (1-q^n)^3)^8 with prod (1-q^n)^3 = sum (-1)^m (2m+1) q^{m(m+1)/2}.
  std::vector<mpz_class> eta3(precision, 0);
  for (std::size_t m = 0;; ++m) {
    const std::size_t e = m * (m + 1) / 2;
    if (e >= precision) break;
    eta3[e] = (m % 2 == 0 ? 1 : -1) * static_cast<long>(2 * m + 1);
  }
  auto sq = series_multiply(eta3, eta3, precision);
  sq = series_multiply(sq, sq, precision);
  sq = series_multiply(sq, sq, precision);
  std::vector<mpz_class> c(precision, 0);
  for (std::size_t n = 1; n < precision; ++n) c[n] = sq[n - 1];
  return {12, std::move(c)};
}

int modular_forms_dimension(int k) {
  if (k < 0 || k % 2 != 0) return 0;
  if (k % 12 == 2) return k / 12;
  return k / 12 + 1;
}

int cusp_forms_dimension(int k) {
  if (k < 12) return 0;
  return modular_forms_dimension(k) - 1;
}

std::vector<QExpansion> miller_basis(int k, std::size_t precision) {
  if (k < 4 || k % 2 != 0) throw Error(ErrorKind::InvalidArgument, "modular_forms", "weight must be even and >= 4");
  const int dim = modular_forms_dimension(k);
  precision = std::max<std::size_t>(precision, static_cast<std::size_t>(dim));
  const QExpansion e4 = eisenstein_series(4, precision), e6 = eisenstein_series(6, precision);
  const QExpansion delta = delta_series(precision);
  std::vector<QExpansion> basis;
  std::vector<mpz_class> one(precision, 0);
  one[0] = 1;
  QExpansion delta_pow(0, std::move(one));
  for (int j = 0; j < dim; ++j) {
    const int rest = k - 12 * j;
    const int b = (rest % 4 == 0) ? 0 : 1;
    const int a = (rest - 6 * b) / 4;
    QExpansion f = delta_pow;
    for (int i = 0; i < a; ++i) f = f * e4;
    for (int i = 0; i < b; ++i) f = f * e6;
    basis.push_back(std::move(f));
    if (j + 1 < dim) delta_pow = delta_pow * delta;
  }
  // Each monomial is q^j + O(q^{j+1}); clear the entries above the diagonal.
  for (int j = dim - 1; j >= 0; --j)
    for (int i = 0; i < j; ++i) {
      const mpz_class coef = basis[i][static_cast<std::size_t>(j)];
      if (coef != 0) basis[i] = basis[i] - basis[j].scaled(coef);
    }
  return basis;
}

std::vector<QExpansion> cusp_part(const std::vector<QExpansion>& basis) {
  std::vector<QExpansion> out;
  for (const auto& f : basis)
    if (f.precision() > 0 && f[0] == 0) out.push_back(f);
  return out;
}

}  // namespace rsm
