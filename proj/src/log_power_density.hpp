#pragma once

#include <functional>
#include <vector>

namespace slln::detail {

/// Density k * x^{-(a+1)} (ln x)^{-b} (ln ln x)^{-g} on (x0, inf).
/// All integrals are taken after the substitution x = e^u, which turns the
/// integrands into smooth, slowly varying functions of u.
class LogPowerDensity {
 public:
  LogPowerDensity(double a, double b, double g, double x0, double k = 1.0);

  /// k * integral of the density over (max(t, x0), inf).
  [[nodiscard]] double upper_mass(double t) const;
  /// k * integral of x * density over [lo, hi], lo >= x0.
  [[nodiscard]] double first_moment(double lo, double hi) const;
  [[nodiscard]] double x0() const { return x0_; }

 private:
  double a_, b_, g_, x0_, k_;
};

/// Monotone inverse of a continuous, strictly decreasing tail on [x_lo, inf):
/// given a level w, returns x with tail(x) = w. Piecewise-cubic Hermite
/// (Fritsch-Butland) interpolation of ln x against -ln tail on log-spaced
/// knots; levels below the last knot fall back to bisection.
class TailInverter {
 public:
  TailInverter(std::function<double(double)> tail, double x_lo, std::size_t knots = 4096,
               double min_level = 1e-18);

  [[nodiscard]] double operator()(double w) const;
  [[nodiscard]] double max_level() const { return max_level_; }

 private:
  [[nodiscard]] double bisect(double w) const;

  std::vector<double> y_;  // -ln tail at knots, increasing
  std::vector<double> z_;  // ln x at knots
  std::vector<double> slope_;
  double max_level_ = 0.0;
  std::function<double(double)> tail_;
  double x_lo_ = 0.0;
};

}  // namespace slln::detail
