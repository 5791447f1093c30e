#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rsm/modular_forms.hpp"

namespace rsm {

namespace {

constexpr mp_bitcnt_t work_bits = 320;

using Poly = std::vector<mpq_class>;  // ascending coefficients

Poly poly_mod(Poly a, const Poly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class lead = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

std::size_t gcd_degree(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier.
Poly charpoly(const std::vector<std::vector<mpz_class>>& A) {
  const std::size_t d = A.size();
  Poly c(d + 1);
  c[d] = 1;
  std::vector<std::vector<mpq_class>> Mk(d, std::vector<mpq_class>(d, 0));
  for (std::size_t m = 1; m <= d; ++m) {
    // M_m = A M_{m-1} + c_{d-m+1} I
    std::vector<std::vector<mpq_class>> next(d, std::vector<mpq_class>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        mpq_class s = 0;
        for (std::size_t l = 0; l < d; ++l) s += A[i][l] * Mk[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < d; ++i) next[i][i] += c[d - m + 1];
    mpq_class tr = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l) tr += A[i][l] * next[l][i];
    c[d - m] = -tr / static_cast<long>(m);
    Mk = std::move(next);
  }
  return c;
}

mpf_class poly_eval(const Poly& p, const mpf_class& x, mpf_class* deriv) {
  mpf_class v(0, work_bits), dv(0, work_bits);
  for (std::size_t i = p.size(); i-- > 0;) {
    dv = dv * x + v;
    v = v * x + mpf_class(p[i], work_bits);
  }
  if (deriv) *deriv = dv;
  return v;
}

std::vector<mpf_class> solve_eigenvector(const std::vector<std::vector<mpz_class>>& A, const mpf_class& lam) {
  const std::size_t d = A.size();
  std::vector<mpf_class> v(d, mpf_class(0, work_bits));
  v[0] = 1;
  if (d == 1) return v;
  const std::size_t n = d - 1;
  std::vector<std::vector<mpf_class>> B(n, std::vector<mpf_class>(n + 1, mpf_class(0, work_bits)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      B[i][j] = mpf_class(A[i + 1][j + 1], work_bits);
      if (i == j) B[i][j] -= lam;
    }
    B[i][n] = -mpf_class(A[i + 1][0], work_bits);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (abs(B[i][col]) > abs(B[piv][col])) piv = i;
    if (B[piv][col] == 0)
      throw Error(ErrorKind::EigenDecompositionFailure, "modular_forms", "singular eigenvector system");
    std::swap(B[piv], B[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const mpf_class f = B[i][col] / B[col][col];
      for (std::size_t j = col; j <= n; ++j) B[i][j] -= f * B[col][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) v[i + 1] = B[i][n] / B[i][i];
  return v;
}

}  // namespace

HeckeEigenform::HeckeEigenform(int weight, std::vector<double> lambda, std::string label)
    : weight_(weight), lambda_(std::move(lambda)), label_(std::move(label)) {
  if (lambda_.size() < 2) throw Error(ErrorKind::InvalidArgument, "modular_forms", "empty eigenvalue table");
}

double HeckeEigenform::operator()(std::int64_t n) const {
  if (n < 1 || static_cast<std::size_t>(n) >= lambda_.size())
    throw Error(ErrorKind::RangeExceedsEigenvalueTable, "modular_forms",
                "lambda(" + std::to_string(n) + ") requested for " + label_ + " with table to " +
                    std::to_string(lambda_.size() - 1));
  return lambda_[static_cast<std::size_t>(n)];
}

std::vector<HeckeEigenform> hecke_eigenforms(int k, std::size_t n_max) {
  if (k < 12 || k % 2 != 0) throw Error(ErrorKind::InvalidArgument, "modular_forms", "weight must be even and >= 12");
  const int d = cusp_forms_dimension(k);
  if (d == 0) return {};
  n_max = std::max<std::size_t>(n_max, 3);
  const std::size_t P = std::max<std::size_t>(n_max + 1, 3 * static_cast<std::size_t>(d) + 2);
  const auto cusp = cusp_part(miller_basis(k, P));
  const std::size_t du = static_cast<std::size_t>(d);

  mpz_class two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k - 1));
  std::vector<std::vector<mpz_class>> T2(du, std::vector<mpz_class>(du));
  for (std::size_t j = 0; j < du; ++j)
    for (std::size_t i = 1; i <= du; ++i) {
      mpz_class v = cusp[j][2 * i];
      if (i % 2 == 0) v += two_k * cusp[j][i / 2];
      T2[i - 1][j] = v;
    }

  const Poly cp = charpoly(T2);
  Poly dcp(cp.size() - 1);
  for (std::size_t i = 1; i < cp.size(); ++i) dcp[i - 1] = cp[i] * static_cast<long>(i);
  if (gcd_degree(cp, dcp) > 0)
    throw Error(ErrorKind::EigenDecompositionFailure, "modular_forms",
                "T_2 has a repeated eigenvalue in weight " + std::to_string(k));

  Eigen::MatrixXd Ad(d, d);
  for (std::size_t i = 0; i < du; ++i)
    for (std::size_t j = 0; j < du; ++j) Ad(i, j) = T2[i][j].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(Ad, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::EigenDecompositionFailure, "modular_forms", "eigenvalue solver failed");

  mpz_class three_k;
  mpz_ui_pow_ui(three_k.get_mpz_t(), 3, static_cast<unsigned long>(k - 1));
  std::vector<HeckeEigenform> forms;
  std::vector<mpf_class> roots;
  for (int idx = 0; idx < d; ++idx) {
    mpf_class lam(es.eigenvalues()[idx].real(), work_bits);
    // Newton with implicit deflation by the roots already found, so nearby
    // starting values cannot converge to the same eigenvalue.
    for (int it = 0; it < 500; ++it) {
      mpf_class dp(0, work_bits);
      const mpf_class p = poly_eval(cp, lam, &dp);
      mpf_class pull(0, work_bits);
      for (const auto& r : roots) pull += 1 / (lam - r);
      const mpf_class step = p / (dp - p * pull);
      lam -= step;
      if (abs(step) <= abs(lam) * mpf_class(1e-80, work_bits)) break;
    }
    for (const auto& r : roots)
      if (abs(lam - r) <= abs(lam) * mpf_class(1e-40, work_bits))
        throw Error(ErrorKind::EigenDecompositionFailure, "modular_forms",
                    "T_2 eigenvalue search converged twice in weight " + std::to_string(k));
    roots.push_back(lam);
    const auto v = solve_eigenvector(T2, lam);
    std::vector<mpf_class> a(P, mpf_class(0, work_bits));
    for (std::size_t n = 1; n < P; ++n)
      for (std::size_t j = 0; j < du; ++j) a[n] += v[j] * mpf_class(cusp[j][n], work_bits);

    // T_2 and T_3 eigen-relations on the first few coefficients.
    const mpf_class tol(1e-60, work_bits);
    auto check = [&](std::size_t p, const mpz_class& pk) {
      for (std::size_t n = 1; n * p < P && n <= du + 2; ++n) {
        mpf_class rhs = a[n * p];
        if (n % p == 0) rhs += mpf_class(pk, work_bits) * a[n / p];
        const mpf_class lhs = a[p] * a[n];
        const mpf_class scale = abs(lhs) + abs(rhs) + 1;
        if (abs(lhs - rhs) > tol * scale)
          throw Error(ErrorKind::EigenDecompositionFailure, "modular_forms",
                      "Hecke relation for T_" + std::to_string(p) + " fails in weight " + std::to_string(k));
      }
    };
    check(2, two_k);
    check(3, three_k);

    std::vector<double> lambda(n_max + 1, 0.0);
    const double half_weight = 0.5 * (k - 1);
    for (std::size_t n = 1; n <= n_max; ++n)
      lambda[n] = a[n].get_d() / std::pow(static_cast<double>(n), half_weight);
    forms.emplace_back(k, std::move(lambda), "");
  }
  std::sort(forms.begin(), forms.end(), [](const HeckeEigenform& l, const HeckeEigenform& r) {
    return l.lambda()[2] < r.lambda()[2];
  });
  std::vector<HeckeEigenform> labelled;
  for (std::size_t j = 0; j < forms.size(); ++j) {
    std::string label = "k" + std::to_string(k);
    if (forms.size() > 1) label += "#" + std::to_string(j + 1);
    labelled.emplace_back(k, forms[j].lambda(), label);
  }
  return labelled;
}

}  // namespace rsm
