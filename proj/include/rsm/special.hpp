#pragma once

#include <gmpxx.h>

#include "rsm/arithmetic.hpp"
#include "rsm/numerics.hpp"

namespace rsm {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// ---- Gamma ------------------------------------------------------------------

cplx log_gamma(cplx s);  // principal branch, continuous off the negative axis
cplx gamma_complex(cplx s);
cplx digamma(cplx s);

// B_n with B_1 = +1/2.
mpq_class bernoulli(unsigned n);
double bernoulli_double(unsigned n);

// ---- zeta and L-functions -------------------------------------------------------

cplx zeta(cplx s);
cplx hurwitz(cplx s, double a);
// zeta(s, a) - 1/(s-1); finite at s = 1.
cplx hurwitz_regular(cplx s, double a);
cplx dirichlet_l(cplx s, const PrimitiveCharacter& chi);

// ---- Bessel functions ---------------------------------------------------------

struct BesselOrder {
  enum class Kind { integer, imaginary };
  Kind kind = Kind::integer;
  int n = 0;             // integer order
  double two_r = 0.0;    // imaginary order 2ir stores 2r

  static BesselOrder integer(int n);
  static BesselOrder imaginary(double two_r);
};

enum class BesselKind { J, Y, K };

// J: integer order only. Y: imaginary order, returns the real combination
// Y_{2ir}(x) + Y_{-2ir}(x). K: imaginary order, returns K_{2ir}(x).
double bessel_eval(BesselKind kind, BesselOrder order, double x, const PrecisionCtx& ctx = {});

// Im J_{i mu}(x) for real mu, x > 0.
double bessel_j_imag_order_im(double mu, double x);
// K_{i mu}(x) from int_0^inf exp(-x cosh t) cos(mu t) dt.
double bessel_k_imag_order(double mu, double x, const PrecisionCtx& ctx = {});

// Kernel data of a fixed form for the Voronoi kernels.
struct FormKernel {
  enum class Kind { holomorphic, spectral };
  Kind kind = Kind::spectral;
  int weight = 0;    // holomorphic weight
  double r = 0.0;    // spectral parameter
  int eps = 1;       // Maass sign; 1 for Eisenstein

  static FormKernel holomorphic(int weight);
  static FormKernel spectral(double r, int eps = 1);
};

double voronoi_kernel(const FormKernel& g, int sign, double x, const PrecisionCtx& ctx = {});

// ---- Bessel averaging over even weights --------------------------------------

struct BesselAverage {
  double lhs = 0.0;
  double main_term = 0.0;
  double residual = 0.0;
  double error_scale = 0.0;  // (xi / K^4) * int |hat h(t) t^4| dt
  int terms = 0;
};

double hat_t4_norm(const SmoothWindow& h, const PrecisionCtx& ctx = {});
BesselAverage bessel_weight_average(const SmoothWindow& h, double K, double xi, const PrecisionCtx& ctx = {});

}  // namespace rsm
