#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rsm/arithmetic.hpp"
#include "rsm/modular_forms.hpp"
#include "rsm/numerics.hpp"

namespace rsm {

struct HChoice {
  enum class Kind { gauss, gauss_poly, r_vanishing };
  Kind kind = Kind::gauss;
  double r = 1.0;  // r_vanishing only

  static HChoice gauss() { return {Kind::gauss, 1.0}; }
  static HChoice gauss_poly() { return {Kind::gauss_poly, 1.0}; }
  static HChoice r_vanishing(double r);
  static HChoice parse(const std::string& name, double r = 1.0);

  cplx operator()(cplx s) const;
  std::string name() const;
};

// ---- correction coefficients ------------------------------------------------------

// Multi-index over the 2*md variables eta_1, conj(eta_1), eta_2, ...
using MultiIndex = std::vector<int>;
using CorrectionTable = std::map<std::pair<MultiIndex, int>, mpq_class>;

// All c_{n,l} with 0 < |n| < M as exact rationals (md = number of eta_j).
CorrectionTable correction_coefficients(int md, int M);
// Symmetrized table (c_{n,l} + c_{nbar,l}) / 2.
CorrectionTable symmetrize(const CorrectionTable& table);

// p_l = sum_n c_{n,l} eta^{-n} for l = 0..; p_0 = 1. `vars` is the interleaved
// list (eta_1, conj eta_1, ...). Uses a total-degree truncated product.
std::vector<cplx> correction_polynomial(const std::vector<cplx>& vars, int M, bool symmetrized);
// Same numbers summed from an exact table.
std::vector<cplx> correction_polynomial(const CorrectionTable& table, const std::vector<cplx>& vars);

std::vector<cplx> interleave_conjugates(const std::vector<cplx>& eta);

// C^{-s/2} F(s, pi_infty) for the archimedean data eta_j = 1/4 + mu_j/2.
cplx gamma_ratio_factor(const std::vector<cplx>& eta, cplx s);
// |C^{-it/2} F(it) - 1 - sum c_{n,l} eta^{-n} (-it)^l| with unsymmetrized c.
double asymp_residual(const std::vector<cplx>& eta, int M, double t);

// ---- the weight G -------------------------------------------------------------------

class GWeight {
 public:
  GWeight(HChoice h, int M, std::vector<cplx> eta, bool symmetrize);

  const HChoice& h() const noexcept { return h_; }
  int M() const noexcept { return M_; }
  bool symmetrized() const noexcept { return symmetrized_; }
  const std::vector<cplx>& eta() const noexcept { return eta_; }
  // p_l with p_0 = 1; G = sum_l p_l (x d/dx)^l G_0.
  const std::vector<cplx>& polynomial() const noexcept { return poly_; }
  // The exact coefficients behind polynomial().
  CorrectionTable corrections() const;

  cplx operator()(double x) const;
  // Inverse Mellin transform along Re s = sigma.
  cplx eval_contour(double x, const PrecisionCtx& ctx, double sigma = 1.0) const;
  cplx mellin(cplx s) const;
  // 1 + sum p_l (-s)^l
  cplx mellin_factor(cplx s) const;
  // Upper envelope of |G| at x (sum of |p_l| |(x d/dx)^l G_0|).
  double envelope(double x) const;

 private:
  HChoice h_;
  int M_;
  std::vector<cplx> eta_;
  bool symmetrized_;
  std::vector<cplx> poly_;
};

GWeight gweight_build(HChoice h, int M, std::vector<cplx> eta, bool symmetrize);
cplx gweight_eval(const GWeight& G, double x, const PrecisionCtx& ctx);
cplx gweight_mellin(const GWeight& G, cplx s);

// (x d/dx)^l G_0 at x = e^u for H = exp(s^2), l = 0..l_max.
std::vector<double> gauss_log_derivatives(double u, int l_max);

// ---- L-function data -----------------------------------------------------------------

struct AfeData {
  std::string label;
  int degree = 0;
  std::vector<cplx> mu;
  double conductor = 1.0;  // arithmetic conductor
  double C = 0.0;          // analytic conductor at 1/2
  double eta_min = 0.0;
  cplx kappa = 1.0;
  cplx lambda_ratio = 1.0;
  bool self_dual = false;
  std::function<std::vector<cplx>(std::size_t)> coefficients;  // a_1..a_n (index 0 unused)

  std::vector<cplx> eta() const;
};

// L(s + i shift, f) for a level-1 eigenform f.
AfeData afe_data_gl2(const HeckeEigenform& f, double shift);
// Archimedean data of the degree-8 pair for weight k, without coefficients.
AfeData afe_data_rs_shape(int k, const FixedForm& g, const PrimitiveCharacter& chi, double t);
// L(s + it, f x g) times its conjugate: degree 8, self-dual.
AfeData afe_data_rs_pair(const HeckeEigenform& f, const FixedForm& g, const PrimitiveCharacter& chi, double t);
// Coefficients of L(s + it, f x g) (degree 4) up to n_max.
std::vector<cplx> rs_coefficients_single(const HeckeEigenform& f, const FixedForm& g, const PrimitiveCharacter& chi,
                                         double t, std::size_t n_max);
// Coefficients a_n of the degree-8 pair up to n_max.
std::vector<cplx> rs_coefficients(const HeckeEigenform& f, const FixedForm& g, const PrimitiveCharacter& chi, double t,
                                  std::size_t n_max);

struct CentralValue {
  cplx value;
  double error_bound = 0.0;  // weight approximation + truncation
  double tail = 0.0;
  std::size_t terms = 0;
};

GWeight gweight_for(const AfeData& data, HChoice h, int M);
// Number of Dirichlet terms needed for the target tolerance.
std::size_t afe_cutoff(const AfeData& data, const GWeight& G, const PrecisionCtx& ctx);
// A negative weight_error is computed with weight_approximation_error.
CentralValue afe_central_value(const AfeData& data, const GWeight& G, const PrecisionCtx& ctx,
                               double weight_error = -1.0);
// sup_x |W(x) - G(x)| bound from the Re s = 0 contour.
double weight_approximation_error(const AfeData& data, const GWeight& G, const PrecisionCtx& ctx);

}  // namespace rsm
