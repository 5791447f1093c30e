#include <cmath>

#include "rsm/numerics.hpp"

namespace rsm {

SmoothWindow SmoothWindow::bump(double a, double b, bool unit_mass, double sharpness) {
  if (!(b > a) || a < 0.0)
    throw Error(ErrorKind::InvalidArgument, "numerics", "bump needs 0 <= a < b");
  if (!(sharpness > 0.0)) throw Error(ErrorKind::InvalidArgument, "numerics", "bump sharpness must be positive");
  SmoothWindow w;
  w.kind_ = Kind::bump;
  w.lo_ = a;
  w.hi_ = b;
  w.sharpness_ = sharpness;
  w.label_ = "bump[" + std::to_string(a) + "," + std::to_string(b) + "]";
  if (sharpness != 1.0) w.label_ += "^" + std::to_string(sharpness);
  if (unit_mass) {
    // The raw bump is tiny for narrow supports; normalize from a tight quadrature.
    PrecisionCtx ctx;
    ctx.target_tol = 1e-17;
    auto raw = [&](double x) { return w.bump_value(x); };
    const double mass = integrate_compact(raw, a, b, ctx, 8).value;
    w.scale_ = 1.0 / mass;
    w.label_ += ":unit";
  }
  return w;
}

SmoothWindow SmoothWindow::user(std::function<double(double)> f, double a, double b, std::string label) {
  if (!(b > a) || a < 0.0)
    throw Error(ErrorKind::InvalidArgument, "numerics", "user window needs 0 <= a < b");
  SmoothWindow w;
  w.kind_ = Kind::user;
  w.lo_ = a;
  w.hi_ = b;
  w.fn_ = std::move(f);
  w.label_ = std::move(label);
  return w;
}

double SmoothWindow::operator()(double x) const {
  if (!(x > lo_ && x < hi_)) return 0.0;
  if (kind_ == Kind::user) return scale_ * fn_(x);
  return bump_value(x);
}

SmoothWindow SmoothWindow::scaled(double factor) const {
  SmoothWindow w = *this;
  w.scale_ *= factor;
  return w;
}

}  // namespace rsm
