#include <cmath>

#include "rsm/simd.hpp"

namespace rsm::simd {

namespace {

inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

}  // namespace

namespace detail {

double fold_lanes(const double* s, const double* c, std::span<const double> tail_x,
                  std::span<const double> tail_y, bool products) noexcept {
  double acc = 0.0, comp = 0.0, e = 0.0;
  for (int lane = 0; lane < 4; ++lane) {
    two_sum(acc, s[lane], acc, e);
    comp += e + c[lane];
  }
  for (std::size_t i = 0; i < tail_x.size(); ++i) {
    double term = tail_x[i], perr = 0.0;
    if (products) {
      term = tail_x[i] * tail_y[i];
      perr = std::fma(tail_x[i], tail_y[i], -term);
    }
    two_sum(acc, term, acc, e);
    comp += e + perr;
  }
  return acc + comp;
}

}  // namespace detail

namespace scalar {

double sum(std::span<const double> xs) noexcept {
  double s[4] = {0, 0, 0, 0}, c[4] = {0, 0, 0, 0};
  const std::size_t body = xs.size() & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4) {
    for (int lane = 0; lane < 4; ++lane) {
      double e;
      two_sum(s[lane], xs[i + lane], s[lane], e);
      c[lane] += e;
    }
  }
  return detail::fold_lanes(s, c, xs.subspan(body), {}, false);
}

double dot(std::span<const double> xs, std::span<const double> ys) noexcept {
  double s[4] = {0, 0, 0, 0}, c[4] = {0, 0, 0, 0};
  const std::size_t n = xs.size() < ys.size() ? xs.size() : ys.size();
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4) {
    for (int lane = 0; lane < 4; ++lane) {
      const double p = xs[i + lane] * ys[i + lane];
      const double pe = std::fma(xs[i + lane], ys[i + lane], -p);
      double e;
      two_sum(s[lane], p, s[lane], e);
      c[lane] += e + pe;
    }
  }
  return detail::fold_lanes(s, c, xs.subspan(body, n - body), ys.subspan(body, n - body), true);
}

}  // namespace scalar
}  // namespace rsm::simd
