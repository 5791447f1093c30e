#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "rsm/numerics.hpp"

namespace rsm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DivergentAtS: return "DivergentAtS";
    case ErrorKind::PoleAtS: return "PoleAtS";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::ModulusNotDivisible: return "ModulusNotDivisible";
    case ErrorKind::ArgumentNotCoprime: return "ArgumentNotCoprime";
    case ErrorKind::EigenDecompositionFailure: return "EigenDecompositionFailure";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::RangeExceedsEigenvalueTable: return "RangeExceedsEigenvalueTable";
    case ErrorKind::InvalidFormCombination: return "InvalidFormCombination";
    case ErrorKind::FormTheoremMismatch: return "FormTheoremMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DataFormat: return "DataFormat";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonConvergence:
    case ErrorKind::DivergentAtS:
    case ErrorKind::PoleAtS:
    case ErrorKind::PoleAtOne:
    case ErrorKind::PoleAtZero:
    case ErrorKind::EigenDecompositionFailure:
    case ErrorKind::IllConditioned:
    case ErrorKind::BudgetExceeded:
      return true;
    default:
      return false;
  }
}

void PrecisionCtx::validate() const {
  if (working_digits < 15)
    throw Error(ErrorKind::InvalidArgument, "numerics", "working_digits must be >= 15");
  if (!(target_tol > 0.0))
    throw Error(ErrorKind::InvalidArgument, "numerics", "target_tol must be positive");
  if (max_panels < 1) throw Error(ErrorKind::InvalidArgument, "numerics", "max_panels must be >= 1");
}

namespace detail {

const std::vector<double>& gk15_nodes() {
  static const std::vector<double> v = [] {
    auto a = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    return std::vector<double>(a.begin(), a.end());
  }();
  return v;
}

const std::vector<double>& gk15_kronrod_weights() {
  static const std::vector<double> v = [] {
    auto a = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    return std::vector<double>(a.begin(), a.end());
  }();
  return v;
}

const std::vector<double>& gk15_gauss_weights() {
  static const std::vector<double> v = [] {
    auto a = boost::math::quadrature::gauss<double, 7>::weights();
    return std::vector<double>(a.begin(), a.end());
  }();
  return v;
}

}  // namespace detail

const std::vector<double>& gl16_nodes() {
  static const std::vector<double> v = [] {
    auto a = boost::math::quadrature::gauss<double, 16>::abscissa();
    return std::vector<double>(a.begin(), a.end());
  }();
  return v;
}

const std::vector<double>& gl16_weights() {
  static const std::vector<double> v = [] {
    auto a = boost::math::quadrature::gauss<double, 16>::weights();
    return std::vector<double>(a.begin(), a.end());
  }();
  return v;
}

cplx window_transform(const SmoothWindow& h, TransformKind kind, double t, const PrecisionCtx& ctx) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  // Oscillation count across the support sets the starting panel count.
  if (kind == TransformKind::hat) {
    const int panels = 1 + static_cast<int>(std::abs(t) * (h.hi() - h.lo()));
    auto f = [&](double x) { return h(x) * std::polar(1.0, two_pi * x * t); };
    return integrate_compact(f, h.lo(), h.hi(), ctx, panels).value;
  }
  const double lo = h.lo(), hi = h.hi();
  const int panels = 1 + static_cast<int>(std::abs(t) * (hi * hi - lo * lo) / two_pi);
  auto f = [&](double u) { return h(u) * std::polar(1.0, u * u * t); };
  return std::sqrt(2.0 / std::numbers::pi) * integrate_compact(f, lo, hi, ctx, panels).value;
}

cplx mellin(const std::function<double(double)>& f, cplx s, double lo, double hi, const PrecisionCtx& ctx) {
  if (lo < 0.0) throw Error(ErrorKind::InvalidArgument, "numerics", "mellin lower limit must be >= 0");
  auto kernel = [&](double x) -> cplx {
    if (x <= 0.0) {
      if (s.real() < 1.0)
        throw Error(ErrorKind::DivergentAtS, "numerics", "mellin integrand singular at 0 for Re s < 1");
      return 0.0;
    }
    return f(x) * std::exp((s - 1.0) * std::log(x));
  };
  if (std::isinf(hi)) {
    // Split at 1; [0,1] maps x = u^2 to tame x^{s-1} when Re s > 0.
    cplx head{};
    if (lo < 1.0) {
      if (s.real() <= 0.0)
        throw Error(ErrorKind::DivergentAtS, "numerics", "mellin diverges at 0 for Re s <= 0");
      auto g = [&](double u) -> cplx {
        if (u <= 0.0) return 0.0;
        return f(u * u) * std::exp((2.0 * s - 1.0) * std::log(u)) * 2.0;
      };
      head = integrate_compact(g, std::sqrt(lo), 1.0, ctx, 4).value;
    }
    return head + integrate_half_line(kernel, std::max(lo, 1.0), ctx).value;
  }
  return integrate_compact(kernel, lo, hi, ctx, 4).value;
}

cplx mellin(const SmoothWindow& w, cplx s, const PrecisionCtx& ctx) {
  std::function<double(double)> f = [&](double x) { return w(x); };
  return mellin(f, s, w.lo(), w.hi(), ctx);
}

namespace {

template <class T>
T pairwise(std::span<const T> xs) {
  if (xs.size() <= 16) {
    CompensatedSum<T> acc;
    for (const T& x : xs) acc.add(x);
    return acc.value();
  }
  const std::size_t half = xs.size() / 2;
  return pairwise(xs.first(half)) + pairwise(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise(xs); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise(xs); }

}  // namespace rsm
