#pragma once

#include <string>
#include <vector>

#include "rsm/afe.hpp"
#include "rsm/arithmetic.hpp"
#include "rsm/modular_forms.hpp"
#include "rsm/numerics.hpp"

namespace rsm {

// (N^2 / (2 pi)^4) (t^2 + k^2/4)^2
double conductor_proxy(double t, double k, int N);

struct MomentConfig {
  double T = 12.0;
  double K = 12.0;
  int N = 1;
  PrimitiveCharacter chi = PrimitiveCharacter::trivial();
  FixedForm g = FixedForm::eisenstein(0.0);
  SmoothWindow W1 = SmoothWindow::bump();
  SmoothWindow W2 = SmoothWindow::bump();
  int M = 3;                      // AFE correction order
  HChoice h = HChoice::gauss();
  int t_panels = 8;               // initial Gauss-Legendre panels in t
  int max_t_panels = 512;
  std::size_t term_budget = 2'000'000'000;  // total Dirichlet terms
  int threads = 1;
  int family_weight = 0;  // > 0 restricts the family to this weight
  PrecisionCtx ctx{16, 1e-6, 20000};

  // Throws on hard violations; returns soft warnings.
  std::vector<std::string> validate() const;
  // Even k with W2((k-1)/K) > 0, or just family_weight when set.
  std::vector<int> weights() const;
};

// ---- smooth averages ----------------------------------------------------------------

struct SmoothAverageKind {
  enum class Kind { log_power, conductor_power };
  Kind kind = Kind::log_power;
  int j = 0;       // log_power: log^j C
  double r = 0.0;  // conductor_power: C^{ir}

  static SmoothAverageKind log_power(int j);
  static SmoothAverageKind conductor_power(double r);
};

// (1/TK) int int W1(t/T) W2(x/K) f(C(t,x)) dt dx. The error is the gap between
// the 8- and 16-panel product rules.
Estimate<cplx> smooth_average(SmoothAverageKind kind, double T, double K, const SmoothWindow& W1,
                              const SmoothWindow& W2, const PrecisionCtx& ctx = {}, int N = 1);

// ---- main terms ---------------------------------------------------------------------

enum class MomentTheorem { cuspidal = 1, eisenstein = 2, eisenstein_zero = 3 };

MomentTheorem theorem_for(const FixedForm& g);
// Number of log powers in the main term (the leading one is j = count - 1).
int log_power_count(MomentTheorem theorem);

struct MainTermPiece {
  std::string label;       // "a_j L_j", "b+ M_ir", "b- M_-ir"
  cplx coefficient;
  cplx average;            // L_j or M_{+-ir}
  double contribution = 0.0;  // TK * Re(coefficient * average)
  bool pinned = false;     // fixed by a closed form rather than fitted
};

struct MainTerm {
  MomentTheorem theorem = MomentTheorem::eisenstein_zero;
  std::vector<MainTermPiece> pieces;
  double value = 0.0;
  double leading_error = 0.0;  // from the Euler product behind a_1 (cuspidal)
};

// Closed forms: leading a_j and b_+-, each with the Euler factors at p | N.
Estimate<cplx> leading_coefficient(MomentTheorem theorem, const FixedForm& g, int N, std::size_t euler_primes = 200000);
cplx secondary_coefficient(double r, int N, int sign);

// `unpinned` lists a_0, a_1, ... below the leading power; missing entries are 0.
MainTerm main_term(MomentTheorem theorem, const MomentConfig& cfg, const std::vector<double>& unpinned = {});

struct UnpinnedFit {
  std::vector<double> coefficients;  // a_0 .. a_{v-2}; entries not fitted stay 0
  std::vector<int> fitted;           // indices actually fitted
  std::vector<double> covariance;    // row-major over `fitted`
  double residual_norm = 0.0;
};

// Least squares for the top `count` unpinned a_j from observed moments.
UnpinnedFit fit_unpinned(MomentTheorem theorem, const std::vector<MomentConfig>& configs,
                         const std::vector<double>& observed, int count);

// ---- direct computation -------------------------------------------------------------

// Petersson delta-term inserted into the AFE sum, averaged over t and k.
Estimate<double> diagonal_direct(const MomentConfig& cfg);

struct MomentReport {
  double i_direct = 0.0;
  double error = 0.0;  // AFE bounds plus t-quadrature gap
  MainTerm main;
  double main_term = 0.0;
  double diagonal = 0.0;
  double residual = 0.0;  // i_direct - main_term
  double ratio = 0.0;     // i_direct / main_term
  std::vector<int> weights;
  std::size_t forms = 0;
  std::size_t afe_terms = 0;
  int t_panels = 0;
  double seconds = 0.0;
  std::vector<std::string> warnings;
};

struct MomentOptions {
  bool with_diagonal = true;
  std::vector<double> unpinned;
};

MomentReport moment_direct(const MomentConfig& cfg, const MomentOptions& options = {});

}  // namespace rsm
