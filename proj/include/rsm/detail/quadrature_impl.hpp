#pragma once

#include <algorithm>
#include <cmath>
#include <queue>

namespace rsm {

namespace detail {

template <class T>
struct PanelResult {
  double a, b;
  T value;
  double error;
};

template <class F>
auto gk15_panel(F& f, double a, double b) {
  using T = std::decay_t<decltype(f(0.0))>;
  const auto& x = gk15_nodes();
  const auto& wk = gk15_kronrod_weights();
  const auto& wg = gk15_gauss_weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T kron = fc * wk[0];
  T gauss = fc * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    T s = f(c - h * x[i]) + f(c + h * x[i]);
    kron += s * wk[i];
    if (i % 2 == 0) gauss += s * wg[i / 2];
  }
  kron *= h;
  gauss *= h;
  return PanelResult<T>{a, b, kron, magnitude(kron - gauss)};
}

}  // namespace detail

template <class F>
auto integrate_compact(F&& f, double a, double b, const PrecisionCtx& ctx, int initial_panels)
    -> Estimate<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  using P = detail::PanelResult<T>;
  if (!(b > a)) return {T{}, 0.0};
  auto worse = [](const P& l, const P& r) {
    if (l.error != r.error) return l.error < r.error;
    return l.a > r.a;
  };
  std::priority_queue<P, std::vector<P>, decltype(worse)> heap(worse);
  double total_err = 0.0;
  const int n0 = std::max(1, initial_panels);
  for (int i = 0; i < n0; ++i) {
    double lo = a + (b - a) * i / n0, hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    P p = detail::gk15_panel(f, lo, hi);
    total_err += p.error;
    heap.push(p);
  }
  int panels = n0;
  while (total_err > ctx.target_tol) {
    if (panels >= ctx.max_panels)
      throw Error(ErrorKind::NonConvergence, "numerics",
                  "adaptive quadrature budget exhausted (error " + std::to_string(total_err) + ")");
    P worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision; accept it.
      heap.push(P{worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.error;
      continue;
    }
    P left = detail::gk15_panel(f, worst.a, mid);
    P right = detail::gk15_panel(f, mid, worst.b);
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Reduce in panel order so the result does not depend on heap layout.
  std::vector<P> all;
  all.reserve(heap.size());
  double err = 0.0;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const P& l, const P& r) { return l.a < r.a; });
  CompensatedSum<T> acc;
  for (const auto& p : all) {
    acc.add(p.value);
    err += p.error;
  }
  return {acc.value(), err};
}

template <class F>
auto integrate_half_line(F&& f, double a, const PrecisionCtx& ctx)
    -> Estimate<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  auto g = [&](double u) -> T {
    const double one_minus = 1.0 - u;
    const double x = a + u / one_minus;
    if (!std::isfinite(x)) return T{};
    return f(x) * (1.0 / (one_minus * one_minus));
  };
  return integrate_compact(g, 0.0, 1.0, ctx, 4);
}

template <class F>
auto integrate_real_line(F&& f, const PrecisionCtx& ctx)
    -> Estimate<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  auto g = [&](double u) -> T {
    const double d = 1.0 - u * u;
    const double y = u / d;
    if (!std::isfinite(y)) return T{};
    return f(y) * ((1.0 + u * u) / (d * d));
  };
  return integrate_compact(g, -1.0, 1.0, ctx, 8);
}

template <class F>
auto gauss_legendre_panels(F&& f, double a, double b, int panels) -> std::decay_t<decltype(f(0.0))> {
  using T = std::decay_t<decltype(f(0.0))>;
  const auto& x = gl16_nodes();
  const auto& w = gl16_weights();
  CompensatedSum<T> acc;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + width * p;
    const double c = lo + 0.5 * width, h = 0.5 * width;
    T part{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      part += (f(c - h * x[i]) + f(c + h * x[i])) * w[i];
    }
    acc.add(part * h);
  }
  return acc.value();
}

}  // namespace rsm
