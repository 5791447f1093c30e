#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rsm/arithmetic.hpp"
#include "rsm/numerics.hpp"
#include "rsm/special.hpp"

namespace rsm {

// Integral q-expansion sum_{n < precision} a(n) q^n of a level-1 modular form.
class QExpansion {
 public:
  QExpansion(int weight, std::vector<mpz_class> coeffs);

  int weight() const noexcept { return weight_; }
  std::size_t precision() const noexcept { return coeffs_.size(); }
  const mpz_class& operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }

  QExpansion operator+(const QExpansion& other) const;
  QExpansion operator-(const QExpansion& other) const;
  QExpansion operator*(const QExpansion& other) const;
  QExpansion scaled(const mpz_class& factor) const;
  QExpansion truncated(std::size_t precision) const;
  // T_p at level 1; the result is known to precision ceil(P/p).
  QExpansion hecke(std::int64_t p) const;

 private:
  int weight_;
  std::vector<mpz_class> coeffs_;
};

// Truncated product of integer power series via Kronecker substitution.
std::vector<mpz_class> series_multiply(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                       std::size_t precision);

QExpansion eisenstein_series(int k, std::size_t precision);  // constant term 1
QExpansion delta_series(std::size_t precision);
// Echelon basis f_i = q^i + O(q^dim) of M_k(SL2(Z)).
std::vector<QExpansion> miller_basis(int k, std::size_t precision);
// The cusp forms among a Miller basis (zero constant term).
std::vector<QExpansion> cusp_part(const std::vector<QExpansion>& basis);
int modular_forms_dimension(int k);
int cusp_forms_dimension(int k);

class HeckeEigenform {
 public:
  HeckeEigenform(int weight, std::vector<double> lambda, std::string label);

  int weight() const noexcept { return weight_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t table_limit() const noexcept { return lambda_.size() - 1; }
  // lambda(n) = a(n) / n^{(k-1)/2}; throws RangeExceedsEigenvalueTable past the table.
  double operator()(std::int64_t n) const;
  const std::vector<double>& lambda() const noexcept { return lambda_; }

 private:
  int weight_;
  std::vector<double> lambda_;  // index 0 unused
  std::string label_;
};

// Normalized Hecke eigenbasis of S_k(SL2(Z)) with lambda(n) for n <= n_max,
// ordered by increasing lambda(2).
std::vector<HeckeEigenform> hecke_eigenforms(int k, std::size_t n_max);

// ---- Petersson formula ----------------------------------------------------------

// delta_{m,n} + 2 pi (-1)^{k/2} sum_{c <= c_max} S(m,n,c)/c J_{k-1}(4 pi sqrt(mn)/c).
struct KloostermanSide {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t c_max = 0;
};
KloostermanSide petersson_kloosterman_side(int k, std::int64_t m, std::int64_t n, const PrecisionCtx& ctx,
                                           std::int64_t c_max = 0);

struct PeterssonSolution {
  int weight = 0;
  std::vector<HeckeEigenform> forms;
  std::vector<double> rho;
  std::vector<std::pair<int, int>> training_pairs;
  double fit_residual = 0.0;

  // |sum_j rho_j lambda_j(m) lambda_j(n) - Kloosterman side|.
  double residual(std::int64_t m, std::int64_t n, const PrecisionCtx& ctx) const;
};

// Least squares for the weights from the pairs (m,m), m <= dim+1 (or `pairs`).
PeterssonSolution petersson_solve(int k, const PrecisionCtx& ctx, std::vector<std::pair<int, int>> pairs = {},
                                  std::size_t n_max = 64);
std::vector<double> petersson_rho(int k, const PrecisionCtx& ctx);
double petersson_residual(int k, std::int64_t m, std::int64_t n, const PrecisionCtx& ctx);

// ---- the fixed form g -------------------------------------------------------------

struct EigenformFile {
  enum class Kind { holomorphic, maass };
  Kind kind = Kind::holomorphic;
  int weight = 0;
  int level = 1;
  std::string character = "trivial";
  double r = 0.0;
  int epsilon = 1;
  std::vector<double> lambda;  // index 0 unused
};

// Text format: '#' comments; one header line of key=value tokens, either
// "weight=.. level=.. character=.." or "r=.. epsilon=..", then "n lambda(n)"
// lines. lambda(1) must be 1 and lambda must be multiplicative on coprime pairs.
// epsilon is the parity of the Maass form under x -> -x (even: +1).
EigenformFile load_eigenform_file(const std::filesystem::path& path);
EigenformFile parse_eigenform_text(const std::string& text);

class FixedForm {
 public:
  enum class Kind { holomorphic, maass, eisenstein };

  static FixedForm holomorphic(HeckeEigenform f);
  static FixedForm maass(double r, int eps, std::vector<double> lambda, std::string label = "maass");
  static FixedForm eisenstein(double r);
  static FixedForm from_file(const EigenformFile& data, std::string label);
  // "Delta", "E<r>" (e.g. E0, E1, E0.5), "holo<k>[:<j>]", or "file:<path>".
  static FixedForm from_name(const std::string& name, std::size_t n_max);

  Kind kind() const noexcept { return kind_; }
  int weight() const noexcept { return weight_; }
  double r() const noexcept { return r_; }
  int eps() const noexcept { return eps_; }
  const std::string& label() const noexcept { return label_; }
  bool is_cuspidal() const noexcept { return kind_ != Kind::eisenstein; }
  // Largest n with a stored eigenvalue (unbounded for Eisenstein series).
  std::size_t table_limit() const noexcept;

  double lambda(std::int64_t n) const;
  // lambda(1..n_max); index 0 unused.
  std::vector<double> lambda_table(std::size_t n_max) const;
  FormKernel kernel() const;
  // Archimedean shifts nu_1..nu_4 of the Rankin-Selberg pair with this form.
  std::array<cplx, 4> rs_shifts() const;

 private:
  Kind kind_ = Kind::eisenstein;
  int weight_ = 0;
  double r_ = 0.0;
  int eps_ = 1;
  std::vector<double> table_;
  std::string label_;
};

// L(1, Ad^2 g) as a truncated Euler product over p <= p_max. The error is the
// spread of the partial products over the last decade of primes.
Estimate<double> adjoint_l_one(const FixedForm& g, std::size_t p_max);

}  // namespace rsm
