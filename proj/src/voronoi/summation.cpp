#include <cmath>
#include <numbers>

#include "rsm/arithmetic.hpp"
#include "rsm/voronoi.hpp"

namespace rsm {

namespace {

constexpr double pi = std::numbers::pi;

cplx unit_root(std::int64_t num, std::int64_t den) {
  const double angle = 2.0 * pi * static_cast<double>(mod(num, den)) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

double alpha_of(std::int64_t n, std::int64_t c) {
  return 4.0 * pi * std::sqrt(static_cast<double>(n)) / static_cast<double>(c);
}

// Bound on sum_{m >= n} d(m) |H(alpha_m)| for a kernel with a decay bound,
// using d(m) <= 2 sqrt(m) and monotone decay over doubling blocks.
double tail_bound_from(std::int64_t n, std::int64_t c, const SmoothWindow& F, const HankelKernel& B) {
  double total = 0.0;
  for (std::int64_t lo = n; lo < (std::int64_t{1} << 50); lo *= 2) {
    const double block = static_cast<double>(lo) * 2.0 * std::sqrt(2.0 * static_cast<double>(lo)) *
                         hankel_decay_bound(F, B, alpha_of(lo, c));
    total += block;
    if (block < 1e-6 * total || block < 1e-300) break;
  }
  return total;
}

}  // namespace

void VoronoiInstance::validate() const {
  if (c < 1) throw Error(ErrorKind::InvalidArgument, "voronoi", "c must be positive");
  if (gcd(a, c) != 1) throw Error(ErrorKind::ArgumentNotCoprime, "voronoi", "gcd(a, c) must be 1");
  if (F.lo() < 0.0) throw Error(ErrorKind::InvalidArgument, "voronoi", "window must live on (0, inf)");
}

cplx PolarTerm::operator()(double t) const {
  const double cd = static_cast<double>(c);
  const double lt = std::log(t / (cd * cd));
  if (r == 0.0) return lt + 2.0 * euler_gamma;
  const double sign = branch >= 0 ? 1.0 : -1.0;
  return zeta(cplx(1.0, 2.0 * sign * r)) * std::exp(cplx(0.0, sign * r * lt));
}

double polar_contribution(double r, std::int64_t c, const SmoothWindow& F, const PrecisionCtx& ctx) {
  PrecisionCtx local = ctx.with_tol(std::max(1e-16, ctx.target_tol * 1e-3));
  if (r == 0.0) {
    const PolarTerm P{0.0, c, 1};
    return integrate_compact([&](double x) { return F(x) * P(x).real(); }, F.lo(), F.hi(), local, 8).value;
  }
  const PolarTerm P{r, c, 1};
  // The minus branch is the conjugate of the plus branch.
  const cplx plus = integrate_compact([&](double x) { return F(x) * P(x); }, F.lo(), F.hi(), local, 8).value;
  return 2.0 * plus.real();
}

cplx voronoi_lhs(const VoronoiInstance& inst, const PrecisionCtx& ctx) {
  (void)ctx;
  inst.validate();
  const auto n_lo = static_cast<std::int64_t>(std::floor(inst.F.lo())) + 1;
  const auto n_hi = static_cast<std::int64_t>(std::ceil(inst.F.hi())) - 1;
  CompensatedSum<cplx> acc;
  for (std::int64_t n = std::max<std::int64_t>(1, n_lo); n <= n_hi; ++n) {
    const double w = inst.F(static_cast<double>(n));
    if (w == 0.0) continue;
    acc.add(inst.g.lambda(n) * w * unit_root(inst.a * n, inst.c));
  }
  return static_cast<double>(inst.c) * acc.value();
}

VoronoiRhs voronoi_rhs_detail(const VoronoiInstance& inst, const PrecisionCtx& ctx) {
  inst.validate();
  const std::int64_t c = inst.c;
  const std::int64_t abar = c == 1 ? 0 : mod_inverse(mod(inst.a, c), c);
  const FormKernel g = inst.g.kernel();
  const double tol = ctx.target_tol;
  const bool table_bounded = inst.g.kind() != FixedForm::Kind::eisenstein;

  VoronoiRhs out;
  CompensatedSum<cplx> acc;
  for (int sign : {1, -1}) {
    for (const HankelKernel& B : voronoi_kernels(g, sign)) {
      auto term = [&](std::int64_t n) {
        const double h = hankel_transform(inst.F, B, alpha_of(n, c), ctx).value;
        return inst.g.lambda(n) * h * unit_root(-sign * n * abar, c);
      };
      if (B.reducible() && inst.F.kind() == SmoothWindow::Kind::bump) {
        // Smallest n whose certified tail is below tol / 10.
        std::int64_t hi = 1;
        while (tail_bound_from(hi, c, inst.F, B) > 0.1 * tol) {
          hi *= 2;
          if (hi > (std::int64_t{1} << 40))
            throw Error(ErrorKind::NonConvergence, "voronoi", "Hankel decay too slow for the requested tolerance");
        }
        std::int64_t lo = hi / 2;
        while (hi - lo > 1) {
          const std::int64_t mid = lo + (hi - lo) / 2;
          (tail_bound_from(mid, c, inst.F, B) > 0.1 * tol ? lo : hi) = mid;
        }
        const std::int64_t n_max = hi - 1;
        if (table_bounded && static_cast<std::size_t>(n_max) > inst.g.table_limit())
          throw Error(ErrorKind::RangeExceedsEigenvalueTable, "voronoi",
                      "need eigenvalues up to " + std::to_string(n_max));
        for (std::int64_t n = 1; n <= n_max; ++n) acc.add(term(n));
        out.tail_bound += tail_bound_from(hi, c, inst.F, B);
        out.terms += n_max;
      } else {
        // Measured decay: stop after a doubling block whose absolute mass is
        // below tol/100, or once the terms sit at the kernel's rounding floor
        // (tiny terms whose block mass no longer halves).
        double previous = INFINITY;
        std::int64_t n = 1;
        for (std::int64_t block_end = 8;; block_end *= 2) {
          if (table_bounded && static_cast<std::size_t>(block_end) > inst.g.table_limit())
            throw Error(ErrorKind::RangeExceedsEigenvalueTable, "voronoi",
                        "need eigenvalues up to " + std::to_string(block_end));
          double mass = 0.0, largest = 0.0;
          for (; n <= block_end; ++n) {
            const cplx t = term(n);
            acc.add(t);
            mass += std::abs(t);
            largest = std::max(largest, std::abs(t));
          }
          if (mass < 0.01 * tol || (largest < 1e-3 * tol && mass > 0.5 * previous)) {
            out.tail_bound += mass;
            break;
          }
          previous = mass;
          if (block_end > (std::int64_t{1} << 30))
            throw Error(ErrorKind::NonConvergence, "voronoi", "Hankel terms do not decay");
        }
        out.terms += n - 1;
      }
    }
  }
  if (inst.g.kind() == FixedForm::Kind::eisenstein) {
    out.polar = polar_contribution(inst.g.r(), c, inst.F, ctx);
    acc.add(out.polar);
  }
  out.value = acc.value();
  return out;
}

cplx voronoi_rhs(const VoronoiInstance& inst, const PrecisionCtx& ctx) { return voronoi_rhs_detail(inst, ctx).value; }

}  // namespace rsm
