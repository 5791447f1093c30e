#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "rsm/moments.hpp"
#include "rsm/special.hpp"

namespace rsm {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<std::int64_t> prime_divisors(std::int64_t N) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= N; ++p) {
    if (N % p != 0) continue;
    out.push_back(p);
    while (N % p == 0) N /= p;
  }
  if (N > 1) out.push_back(N);
  return out;
}

double local_factor(int N) {
  double out = 1.0;
  for (std::int64_t p : prime_divisors(N)) out *= 1.0 - 1.0 / static_cast<double>(p * p);
  return out;
}

// Product rule of `panels` Gauss-Legendre panels per axis.
template <class F>
cplx product_rule(F&& f, const SmoothWindow& W1, const SmoothWindow& W2, int panels) {
  return gauss_legendre_panels(
      [&](double u) {
        const double w1 = W1(u);
        if (w1 == 0.0) return cplx(0.0);
        return w1 * gauss_legendre_panels(
                        [&](double v) {
                          const double w2 = W2(v);
                          return w2 == 0.0 ? cplx(0.0) : w2 * f(u, v);
                        },
                        W2.lo(), W2.hi(), panels);
      },
      W1.lo(), W1.hi(), panels);
}

}  // namespace

double conductor_proxy(double t, double k, int N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "moments", "N must be positive");
  const double q = t * t + 0.25 * k * k;
  const double n = static_cast<double>(N);
  return n * n * q * q / std::pow(2.0 * pi, 4);
}

SmoothAverageKind SmoothAverageKind::log_power(int j) {
  if (j < 0 || j > 4) throw Error(ErrorKind::InvalidArgument, "moments", "log power must be in 0..4");
  return {Kind::log_power, j, 0.0};
}

SmoothAverageKind SmoothAverageKind::conductor_power(double r) { return {Kind::conductor_power, 0, r}; }

Estimate<cplx> smooth_average(SmoothAverageKind kind, double T, double K, const SmoothWindow& W1,
                              const SmoothWindow& W2, const PrecisionCtx& ctx, int N) {
  if (!(T > 0.0 && K > 0.0)) throw Error(ErrorKind::InvalidArgument, "moments", "T and K must be positive");
  auto f = [&](double u, double v) -> cplx {
    const double logC = std::log(conductor_proxy(T * u, K * v, N));
    if (kind.kind == SmoothAverageKind::Kind::log_power) return std::pow(logC, kind.j);
    return std::polar(1.0, kind.r * logC);
  };
  const cplx coarse = product_rule(f, W1, W2, 8);
  const cplx fine = product_rule(f, W1, W2, 16);
  const double gap = std::abs(fine - coarse);
  if (!(gap <= std::max(ctx.target_tol, 1e-12 * std::abs(fine))))
    throw Error(ErrorKind::NonConvergence, "moments", "smooth average did not settle");
  return {fine, gap};
}

MomentTheorem theorem_for(const FixedForm& g) {
  if (g.is_cuspidal()) return MomentTheorem::cuspidal;
  return g.r() == 0.0 ? MomentTheorem::eisenstein_zero : MomentTheorem::eisenstein;
}

int log_power_count(MomentTheorem theorem) {
  switch (theorem) {
    case MomentTheorem::cuspidal: return 2;
    case MomentTheorem::eisenstein: return 3;
    case MomentTheorem::eisenstein_zero: return 5;
  }
  return 0;
}

Estimate<cplx> leading_coefficient(MomentTheorem theorem, const FixedForm& g, int N, std::size_t euler_primes) {
  if (theorem != theorem_for(g))
    throw Error(ErrorKind::FormTheoremMismatch, "moments", "fixed form " + g.label() + " does not match the main term");
  const double local = local_factor(N);
  switch (theorem) {
    case MomentTheorem::cuspidal: {
      const auto L = adjoint_l_one(g, std::min(euler_primes, g.table_limit()));
      return {0.5 * L.value * local, 0.5 * L.error * local};
    }
    case MomentTheorem::eisenstein: {
      const double z = std::abs(zeta(cplx(1.0, 2.0 * g.r())));
      return {z * z / 8.0 * local, 0.0};
    }
    case MomentTheorem::eisenstein_zero:
      return {local / 384.0, 0.0};
  }
  return {};
}

cplx secondary_coefficient(double r, int N, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const cplx z = zeta(cplx(1.0, 2.0 * s * r));
  cplx local = 1.0;
  for (std::int64_t p : prime_divisors(N))
    local *= 1.0 - std::exp(-cplx(2.0, 4.0 * s * r) * std::log(static_cast<double>(p)));
  return 0.5 * z * z * z * z * local;
}

MainTerm main_term(MomentTheorem theorem, const MomentConfig& cfg, const std::vector<double>& unpinned) {
  const int count = log_power_count(theorem);
  if (static_cast<int>(unpinned.size()) > count - 1)
    throw Error(ErrorKind::InvalidArgument, "moments", "too many unpinned coefficients");
  const auto lead = leading_coefficient(theorem, cfg.g, cfg.N);
  const double TK = cfg.T * cfg.K;
  MainTerm out;
  out.theorem = theorem;
  out.leading_error = TK * lead.error;
  CompensatedSum<double> total;
  auto add = [&](MainTermPiece piece) {
    piece.contribution = TK * (piece.coefficient * piece.average).real();
    total.add(piece.contribution);
    out.pieces.push_back(std::move(piece));
  };
  for (int j = 0; j < count; ++j) {
    const bool pinned = j == count - 1;
    const cplx a = pinned ? lead.value : cplx(j < static_cast<int>(unpinned.size()) ? unpinned[static_cast<std::size_t>(j)] : 0.0);
    const auto L = smooth_average(SmoothAverageKind::log_power(j), cfg.T, cfg.K, cfg.W1, cfg.W2, cfg.ctx, cfg.N);
    add({"a_" + std::to_string(j) + " L_" + std::to_string(j), a, L.value, 0.0, pinned});
  }
  if (theorem == MomentTheorem::eisenstein) {
    for (int sign : {1, -1}) {
      const double r = sign * cfg.g.r();
      const auto M = smooth_average(SmoothAverageKind::conductor_power(r), cfg.T, cfg.K, cfg.W1, cfg.W2, cfg.ctx, cfg.N);
      add({sign > 0 ? "b+ M_ir" : "b- M_-ir", secondary_coefficient(cfg.g.r(), cfg.N, sign), M.value, 0.0, true});
    }
  }
  out.value = total.value();
  return out;
}

UnpinnedFit fit_unpinned(MomentTheorem theorem, const std::vector<MomentConfig>& configs,
                         const std::vector<double>& observed, int count) {
  const int free = log_power_count(theorem) - 1;
  if (configs.size() != observed.size() || configs.empty())
    throw Error(ErrorKind::InvalidArgument, "moments", "need one observation per configuration");
  if (count < 1 || count > free || static_cast<std::size_t>(count) > configs.size())
    throw Error(ErrorKind::InvalidArgument, "moments", "cannot fit that many coefficients");
  UnpinnedFit fit;
  for (int j = free - count; j < free; ++j) fit.fitted.push_back(j);
  const auto rows = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd A(rows, count);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& cfg = configs[static_cast<std::size_t>(i)];
    const MainTerm pinned = main_term(theorem, cfg, {});
    b(i) = observed[static_cast<std::size_t>(i)] - pinned.value;
    for (int c = 0; c < count; ++c) {
      const auto L = smooth_average(SmoothAverageKind::log_power(fit.fitted[static_cast<std::size_t>(c)]), cfg.T, cfg.K,
                                    cfg.W1, cfg.W2, cfg.ctx, cfg.N);
      A(i, c) = cfg.T * cfg.K * L.value.real();
    }
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < count) throw Error(ErrorKind::IllConditioned, "moments", "fit design matrix is rank deficient");
  const Eigen::VectorXd x = qr.solve(b);
  fit.coefficients.assign(static_cast<std::size_t>(free), 0.0);
  for (int c = 0; c < count; ++c) fit.coefficients[static_cast<std::size_t>(fit.fitted[static_cast<std::size_t>(c)])] = x(c);
  fit.residual_norm = (A * x - b).norm();
  const auto dof = rows - count;
  if (dof > 0) {
    const double sigma2 = fit.residual_norm * fit.residual_norm / static_cast<double>(dof);
    const Eigen::MatrixXd cov = sigma2 * (A.transpose() * A).inverse();
    for (int r = 0; r < count; ++r)
      for (int c = 0; c < count; ++c) fit.covariance.push_back(cov(r, c));
  }
  return fit;
}

}  // namespace rsm
