#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rsm/error.hpp"

namespace rsm {

using cplx = std::complex<double>;

struct PrecisionCtx {
  int working_digits = 16;
  double target_tol = 1e-10;
  int max_panels = 20000;

  void validate() const;
  PrecisionCtx with_tol(double tol) const {
    PrecisionCtx c = *this;
    c.target_tol = tol;
    return c;
  }
};

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

// Smooth compactly supported window. Bumps are exp(-sharpness/((x-a)(b-x)))
// scaled by `scale`; user windows wrap a callable and declare their support.
class SmoothWindow {
 public:
  enum class Kind { bump, user };

  static SmoothWindow bump(double a = 1.0, double b = 2.0, bool unit_mass = false, double sharpness = 1.0);
  static SmoothWindow user(std::function<double(double)> f, double a, double b,
                           std::string label = "user");

  Kind kind() const noexcept { return kind_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double scale() const noexcept { return scale_; }
  double sharpness() const noexcept { return sharpness_; }
  const std::string& label() const noexcept { return label_; }

  double operator()(double x) const;

  // Bump profile for any arithmetic-like scalar (autodiff friendly).
  template <class T>
  T bump_value(const T& x) const {
    using std::exp;
    if (!(x > lo_ && x < hi_)) return T(0.0);
    return scale_ * exp(-sharpness_ / ((x - lo_) * (hi_ - x)));
  }

  SmoothWindow scaled(double factor) const;

 private:
  Kind kind_ = Kind::bump;
  double lo_ = 1.0, hi_ = 2.0, scale_ = 1.0, sharpness_ = 1.0;
  std::function<double(double)> fn_;
  std::string label_ = "bump";
};

namespace detail {

struct Panel {
  double a, b;
};

const std::vector<double>& gk15_nodes();         // nonnegative Kronrod abscissae
const std::vector<double>& gk15_kronrod_weights();
const std::vector<double>& gk15_gauss_weights();  // aligned with odd-index Kronrod nodes

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

}  // namespace detail

// Adaptive Gauss-Kronrod (7/15) on [a,b]. The panel with the largest error is
// split; ties break on the left endpoint so runs are reproducible.
template <class F>
auto integrate_compact(F&& f, double a, double b, const PrecisionCtx& ctx, int initial_panels = 1)
    -> Estimate<std::decay_t<decltype(f(0.0))>>;

// Integral over [a, inf) via x = a + u/(1-u).
template <class F>
auto integrate_half_line(F&& f, double a, const PrecisionCtx& ctx)
    -> Estimate<std::decay_t<decltype(f(0.0))>>;

// Integral over the real line via y = u/(1-u^2).
template <class F>
auto integrate_real_line(F&& f, const PrecisionCtx& ctx)
    -> Estimate<std::decay_t<decltype(f(0.0))>>;

enum class TransformKind { hat, tilde };

// hat: int h(x) e(xt) dx;  tilde: (2/pi)^{1/2} int h(u) e(u^2 t / 2pi) du.
cplx window_transform(const SmoothWindow& h, TransformKind kind, double t, const PrecisionCtx& ctx);

// int_0^inf f(x) x^{s-1} dx on [lo, hi] (hi may be +inf).
cplx mellin(const std::function<double(double)>& f, cplx s, double lo, double hi,
            const PrecisionCtx& ctx);
cplx mellin(const SmoothWindow& w, cplx s, const PrecisionCtx& ctx);

// Composite Gauss-Legendre (16 nodes per panel) on [a,b] with `panels` panels.
template <class F>
auto gauss_legendre_panels(F&& f, double a, double b, int panels)
    -> std::decay_t<decltype(f(0.0))>;
const std::vector<double>& gl16_nodes();
const std::vector<double>& gl16_weights();

// Neumaier accumulator; works for double and complex<double>.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_same_v<T, cplx>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
      sum_ = t;
    }
  }
  T value() const {
    if constexpr (std::is_same_v<T, cplx>)
      return {re_.value(), im_.value()};
    else
      return sum_ + comp_;
  }

 private:
  struct Empty {};
  T sum_{}, comp_{};
  std::conditional_t<std::is_same_v<T, cplx>, CompensatedSum<double>, Empty> re_{}, im_{};
};

double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

}  // namespace rsm

#include "rsm/detail/quadrature_impl.hpp"
