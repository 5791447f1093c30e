#include <cmath>
#include <numbers>
#include <sstream>

#include "rsm/afe.hpp"
#include "rsm/special.hpp"

namespace rsm {

namespace {

cplx log_gamma_r(cplx s) { return -0.5 * s * std::log(std::numbers::pi) + log_gamma(0.5 * s); }

void finish(AfeData& d) {
  const double m2 = static_cast<double>(d.degree) * d.degree;
  for (const cplx& mu : d.mu)
    if (mu.real() < 1.0 / (m2 + 1.0) - 0.5)
      throw Error(ErrorKind::InvalidArgument, "afe", "archimedean parameter violates the Luo-Rudnick-Sarnak bound");
  const auto eta = d.eta();
  double logC = std::log(d.conductor) - d.degree * std::log(std::numbers::pi);
  d.eta_min = INFINITY;
  for (const cplx& e : eta) {
    logC += std::log(std::abs(e));
    d.eta_min = std::min(d.eta_min, std::abs(e));
  }
  d.C = std::exp(logC);
  cplx log_ratio = 0.0;
  for (const cplx& mu : d.mu) log_ratio += log_gamma_r(0.5 + std::conj(mu)) - log_gamma_r(0.5 + mu);
  d.lambda_ratio = std::exp(log_ratio);
}

}  // namespace

std::vector<cplx> AfeData::eta() const {
  std::vector<cplx> out;
  for (const cplx& m : mu) out.push_back(0.25 + 0.5 * m);
  return out;
}

AfeData afe_data_gl2(const HeckeEigenform& f, double shift) {
  AfeData d;
  std::ostringstream label;
  label << "L(s+" << shift << "i, " << f.label() << ")";
  d.label = label.str();
  d.degree = 2;
  const double k = f.weight();
  d.mu = {cplx((k - 1) / 2, shift), cplx((k + 1) / 2, shift)};
  d.conductor = 1.0;
  d.kappa = (f.weight() / 2) % 2 == 0 ? 1.0 : -1.0;  // i^k
  d.self_dual = shift == 0.0;
  d.coefficients = [f, shift](std::size_t n_max) {
    std::vector<cplx> a(n_max + 1, 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) a[n] = f(static_cast<std::int64_t>(n)) * std::polar(1.0, -shift * std::log(static_cast<double>(n)));
    return a;
  };
  finish(d);
  return d;
}

std::vector<cplx> rs_coefficients_single(const HeckeEigenform& f, const FixedForm& g, const PrimitiveCharacter& chi,
                                         double t, std::size_t n_max) {
  if (n_max > f.table_limit())
    throw Error(ErrorKind::RangeExceedsEigenvalueTable, "afe", "family eigenvalues end at " + std::to_string(f.table_limit()));
  const auto lg = g.lambda_table(n_max);
  std::vector<cplx> b(n_max + 1, 0.0);
  for (std::size_t d = 1; d * d <= n_max; ++d) {
    const cplx cd = chi(static_cast<std::int64_t>(d)) * std::polar(1.0, -2.0 * t * std::log(static_cast<double>(d)));
    if (cd == cplx(0.0, 0.0)) continue;
    for (std::size_t m = 1; d * d * m <= n_max; ++m)
      b[d * d * m] += cd * f.lambda()[m] * lg[m] * std::polar(1.0, -t * std::log(static_cast<double>(m)));
  }
  return b;
}

std::vector<cplx> rs_coefficients(const HeckeEigenform& f, const FixedForm& g, const PrimitiveCharacter& chi, double t,
                                  std::size_t n_max) {
  const auto b = rs_coefficients_single(f, g, chi, t, n_max);
  std::vector<cplx> a(n_max + 1, 0.0);
  for (std::size_t n1 = 1; n1 <= n_max; ++n1) {
    if (b[n1] == cplx(0.0, 0.0)) continue;
    for (std::size_t n2 = 1; n1 * n2 <= n_max; ++n2) a[n1 * n2] += b[n1] * std::conj(b[n2]);
  }
  for (auto& x : a) x = x.real();  // the pair is self-dual
  return a;
}

AfeData afe_data_rs_shape(int k, const FixedForm& g, const PrimitiveCharacter& chi, double t) {
  if (g.kind() == FixedForm::Kind::holomorphic && g.weight() >= k)
    throw Error(ErrorKind::InvalidFormCombination, "afe", "holomorphic g must have weight below the family weight");
  AfeData d;
  std::ostringstream label;
  label << "|L(1/2+" << t << "i, f_" << k << " x " << g.label() << ")|^2";
  d.label = label.str();
  d.degree = 8;
  for (const cplx& nu : g.rs_shifts()) {
    const cplx mu = (k - 1) / 2.0 + nu + cplx(0.0, t);
    d.mu.push_back(mu);
    d.mu.push_back(std::conj(mu));
  }
  const double N = chi.modulus();
  d.conductor = N * N * N * N;
  d.kappa = 1.0;
  d.self_dual = true;
  finish(d);
  d.lambda_ratio = 1.0;
  return d;
}

AfeData afe_data_rs_pair(const HeckeEigenform& f, const FixedForm& g, const PrimitiveCharacter& chi, double t) {
  AfeData d = afe_data_rs_shape(f.weight(), g, chi, t);
  d.label = "|L(1/2+" + std::to_string(t) + "i, " + f.label() + " x " + g.label() + ")|^2";
  d.coefficients = [f, g, chi, t](std::size_t n_max) { return rs_coefficients(f, g, chi, t, n_max); };
  return d;
}

}  // namespace rsm
