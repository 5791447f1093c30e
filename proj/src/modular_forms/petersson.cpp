#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>

#include "rsm/modular_forms.hpp"

namespace rsm {

namespace {

// Bound on sum_{c > C} of 2 pi |S(m,n,c)|/c |J_{k-1}(4 pi sqrt(mn)/c)| from
// |S| <= c and |J_v(x)| <= (x/2)^v / Gamma(v+1), as a log.
double log_tail(int k, double mn, double C) {
  const double two_pi = 2.0 * std::numbers::pi;
  return std::log(two_pi) + (k - 1) * std::log(two_pi * std::sqrt(mn)) - std::lgamma(static_cast<double>(k)) +
         (2 - k) * std::log(C) - std::log(static_cast<double>(k - 2));
}

}  // namespace

KloostermanSide petersson_kloosterman_side(int k, std::int64_t m, std::int64_t n, const PrecisionCtx& ctx,
                                           std::int64_t c_max) {
  if (k < 4 || k % 2 != 0) throw Error(ErrorKind::InvalidArgument, "modular_forms", "weight must be even and >= 4");
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "modular_forms", "m and n must be positive");
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  if (c_max <= 0) {
    const double target = std::log(std::max(1e-3 * ctx.target_tol, 1e-18));
    const double logC = (log_tail(k, mn, 1.0) - target) / (k - 2);
    c_max = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::exp(std::max(0.0, logC)))));
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
  CompensatedSum<double> acc;
  const BesselOrder order = BesselOrder::integer(k - 1);
  for (std::int64_t c = 1; c <= c_max; ++c) {
    const double S = kloosterman_trivial(m, n, c);
    if (S == 0.0) continue;
    acc.add(S / static_cast<double>(c) * bessel_eval(BesselKind::J, order, 2.0 * two_pi * std::sqrt(mn) / c, ctx));
  }
  KloostermanSide out;
  out.value = (m == n ? 1.0 : 0.0) + sign * two_pi * acc.value();
  out.tail_bound = std::exp(log_tail(k, mn, static_cast<double>(c_max)));
  out.c_max = c_max;
  return out;
}

double PeterssonSolution::residual(std::int64_t m, std::int64_t n, const PrecisionCtx& ctx) const {
  CompensatedSum<double> acc;
  for (std::size_t j = 0; j < forms.size(); ++j) acc.add(rho[j] * forms[j](m) * forms[j](n));
  return std::abs(acc.value() - petersson_kloosterman_side(weight, m, n, ctx).value);
}

PeterssonSolution petersson_solve(int k, const PrecisionCtx& ctx, std::vector<std::pair<int, int>> pairs,
                                  std::size_t n_max) {
  PeterssonSolution sol;
  sol.weight = k;
  sol.forms = hecke_eigenforms(k, n_max);
  const std::size_t d = sol.forms.size();
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "modular_forms", "no cusp forms in weight " + std::to_string(k));
  if (pairs.empty())
    for (int m = 1; m <= static_cast<int>(d) + 1; ++m) pairs.emplace_back(m, m);
  sol.training_pairs = pairs;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(pairs.size()), static_cast<Eigen::Index>(d));
  Eigen::VectorXd b(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [m, n] = pairs[i];
    for (std::size_t j = 0; j < d; ++j) A(i, j) = sol.forms[j](m) * sol.forms[j](n);
    b(i) = petersson_kloosterman_side(k, m, n, ctx).value;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() < static_cast<Eigen::Index>(d) || sv(sv.size() - 1) <= 1e-12 * sv(0))
    throw Error(ErrorKind::IllConditioned, "modular_forms", "eigenvalue design matrix is rank deficient");
  const Eigen::VectorXd x = svd.solve(b);
  sol.fit_residual = (A * x - b).norm();
  for (std::size_t j = 0; j < d; ++j) {
    if (!(x(j) > 0.0))
      throw Error(ErrorKind::IllConditioned, "modular_forms", "non-positive harmonic weight in weight " + std::to_string(k));
    sol.rho.push_back(x(j));
  }
  return sol;
}

namespace {

const PeterssonSolution& cached_solution(int k, const PrecisionCtx& ctx) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, PeterssonSolution> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_pair(k, ctx.target_tol);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, petersson_solve(k, ctx)).first;
  return it->second;
}

}  // namespace

std::vector<double> petersson_rho(int k, const PrecisionCtx& ctx) { return cached_solution(k, ctx).rho; }

double petersson_residual(int k, std::int64_t m, std::int64_t n, const PrecisionCtx& ctx) {
  return cached_solution(k, ctx).residual(m, n, ctx);
}

}  // namespace rsm
