#pragma once

#include <cstdint>
#include <vector>

#include "rsm/modular_forms.hpp"
#include "rsm/numerics.hpp"
#include "rsm/special.hpp"

namespace rsm {

// ---- the additively twisted series D(E_r, a/c, s) ----------------------------------

enum class EstermannRoute { automatic, direct, hurwitz, functional_equation };

// Sum_n lambda_{E_r}(n) e(na/c) n^{-s}, continued to C minus {1 +- ir}.
cplx estermann_eval(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx = {},
                    EstermannRoute route = EstermannRoute::automatic);

// Right-hand side of the functional equation at s; the two values at 1-s are
// evaluated with `inner`.
cplx estermann_reflected(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx = {},
                         EstermannRoute inner = EstermannRoute::automatic);

// Reflect s -> 1-s -> s: every D(., 1-s) is itself replaced by its reflection.
cplx estermann_double_reflection(double r, std::int64_t a, std::int64_t c, cplx s, const PrecisionCtx& ctx = {});

// (1/2 pi i) times the contour integral of D over a circle around `center`.
cplx estermann_residue(double r, std::int64_t a, std::int64_t c, cplx center, double radius = 0.1,
                       const PrecisionCtx& ctx = {});

// ---- Hankel-type transforms -----------------------------------------------------------

// B(x) = prefactor * Bessel(x) for a single Bessel function; the kernels of the
// summation formula are sums of at most two of these.
struct HankelKernel {
  enum class Bessel { J, Y, K, imag_J };  // imag_J: Im J_{i mu}
  Bessel bessel = Bessel::J;
  int order = 0;         // integer order for J, Y, K
  double mu = 0.0;       // imaginary order for imag_J
  double prefactor = 1.0;

  static HankelKernel J(int n, double prefactor = 1.0);
  static HankelKernel Y(int n, double prefactor = 1.0);
  static HankelKernel K(int n, double prefactor = 1.0);
  static HankelKernel imag_j(double mu, double prefactor = 1.0);
  static HankelKernel k_imag(double mu, double prefactor = 1.0);  // K_{i mu}

  // Integration by parts raises the order; available for integer orders.
  bool reducible() const noexcept { return bessel != Bessel::imag_J && !(bessel == Bessel::K && mu != 0.0); }
  double operator()(double x, const PrecisionCtx& ctx = {}) const;
};

// The kernel J_g^{sign} of the summation formula; empty when it vanishes.
std::vector<HankelKernel> voronoi_kernels(const FormKernel& g, int sign);

struct HankelResult {
  double value = 0.0;
  double error = 0.0;  // quadrature estimate
  int reductions = 0;
};

// int F(x) B(alpha sqrt x) dx. With reductions = j > 0 the integrand is first
// integrated by parts j times against the order-raising recurrence.
HankelResult hankel_transform(const SmoothWindow& F, const HankelKernel& B, double alpha, const PrecisionCtx& ctx = {},
                              int reductions = -1);
double hankel_transform(const SmoothWindow& F, const FormKernel& g, int sign, double alpha,
                        const PrecisionCtx& ctx = {});

// The j <= 12 minimizing the derivative bound below.
int hankel_suggested_reductions(const SmoothWindow& F, const HankelKernel& B, double alpha);

// min_j (2/alpha)^j int |d^j/dx^j (F x^{-s/2})| x^{(s+j)/2} |B_{s+j}(alpha sqrt x)| dx.
double hankel_decay_bound(const SmoothWindow& F, const HankelKernel& B, double alpha);

// ---- the summation formula ------------------------------------------------------------

struct VoronoiInstance {
  FixedForm g;
  std::int64_t a = 1;
  std::int64_t c = 1;
  SmoothWindow F;

  void validate() const;
};

struct PolarTerm {
  double r = 0.0;
  std::int64_t c = 1;
  int branch = 1;  // +1 or -1; ignored for r = 0

  // The integrand factor P(t).
  cplx operator()(double t) const;
};

// Both branches of the polar contribution integrated against F (real for real F).
double polar_contribution(double r, std::int64_t c, const SmoothWindow& F, const PrecisionCtx& ctx = {});

struct VoronoiRhs {
  cplx value;
  double polar = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms = 0;
};

cplx voronoi_lhs(const VoronoiInstance& inst, const PrecisionCtx& ctx = {});
VoronoiRhs voronoi_rhs_detail(const VoronoiInstance& inst, const PrecisionCtx& ctx = {});
cplx voronoi_rhs(const VoronoiInstance& inst, const PrecisionCtx& ctx = {});

}  // namespace rsm
