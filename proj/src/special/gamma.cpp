#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include "rsm/special.hpp"

namespace rsm {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// log(sin(pi z)) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  if (std::abs(z.imag()) < 30.0) return std::log(std::sin(pi * z));
  if (z.imag() > 0.0) return -I * pi * z - std::log(-2.0 * I) + std::log(1.0 - std::exp(2.0 * pi * I * z));
  return I * pi * z - std::log(2.0 * I) + std::log(1.0 - std::exp(-2.0 * pi * I * z));
}

const std::vector<double>& stirling_coeffs() {
  // B_{2j} / (2j (2j-1)), j = 1..12
  static const std::vector<double> c = [] {
    std::vector<double> v;
    for (unsigned j = 1; j <= 12; ++j) v.push_back(bernoulli_double(2 * j) / (2.0 * j * (2.0 * j - 1.0)));
    return v;
  }();
  return c;
}

cplx log_gamma_shifted(cplx z) {
  // Requires Re z >= 0.5.
  cplx shift_log{};
  int n = 0;
  if (z.real() < 15.0) n = static_cast<int>(std::ceil(15.0 - z.real()));
  for (int j = 0; j < n; ++j) shift_log += std::log(z + static_cast<double>(j));
  const cplx w = z + static_cast<double>(n);
  const cplx w_inv = 1.0 / w, w_inv2 = w_inv * w_inv;
  cplx series{};
  cplx pw = w_inv;
  for (double c : stirling_coeffs()) {
    series += c * pw;
    pw *= w_inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * pi) + series - shift_log;
}

}  // namespace

cplx log_gamma(cplx s) {
  if (is_nonpositive_integer(s)) throw Error(ErrorKind::PoleAtS, "special_functions", "Gamma pole");
  if (s.real() < 0.5) return std::log(pi) - log_sin_pi(s) - log_gamma_shifted(1.0 - s);
  return log_gamma_shifted(s);
}

cplx gamma_complex(cplx s) {
  if (is_nonpositive_integer(s)) throw Error(ErrorKind::PoleAtS, "special_functions", "Gamma pole");
  if (s.imag() == 0.0 && s.real() > 0.0 && s.real() < 170.0) return std::tgamma(s.real());
  return std::exp(log_gamma(s));
}

cplx digamma(cplx s) {
  if (is_nonpositive_integer(s)) throw Error(ErrorKind::PoleAtS, "special_functions", "digamma pole");
  if (s.real() < 0.5) return digamma(1.0 - s) - pi / std::tan(pi * s);
  cplx shift{};
  cplx w = s;
  while (w.real() < 15.0) {
    shift += 1.0 / w;
    w += 1.0;
  }
  const cplx w_inv2 = 1.0 / (w * w);
  cplx series{};
  cplx pw = w_inv2;
  for (unsigned j = 1; j <= 12; ++j) {
    series += bernoulli_double(2 * j) / (2.0 * j) * pw;
    pw *= w_inv2;
  }
  return std::log(w) - 0.5 / w - series - shift;
}

mpq_class bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<mpq_class> table{mpq_class(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    // sum_{k=0}^{m} C(m+1,k) B_k = 0 with B_1 = -1/2, flipped below.
    const unsigned m = static_cast<unsigned>(table.size());
    mpz_class binom = 1;  // C(m+1, 0)
    mpq_class acc = 0;
    for (unsigned k = 0; k < m; ++k) {
      mpq_class bk = table[k];
      if (k == 1) bk = -bk;
      acc += mpq_class(binom) * bk;
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class bm = -acc / mpq_class(binom);
    if (m == 1) bm = -bm;
    table.push_back(bm);
  }
  return table[n];
}

double bernoulli_double(unsigned n) { return bernoulli(n).get_d(); }

}  // namespace rsm
