#include "log_power_density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slln/quadrature.hpp"

namespace slln::detail {

LogPowerDensity::LogPowerDensity(double a, double b, double g, double x0, double k)
    : a_(a), b_(b), g_(g), x0_(x0), k_(k) {
  if (!(a > 0.0)) throw std::invalid_argument("LogPowerDensity: power exponent must be positive");
  if (!(x0 > 1.0)) throw std::invalid_argument("LogPowerDensity: x0 must exceed 1");
  if (g != 0.0 && !(std::log(x0) > 1.0)) {
    throw std::invalid_argument("LogPowerDensity: x0 must exceed e when the ln ln exponent is nonzero");
  }
}

double LogPowerDensity::upper_mass(double t) const {
  const double l = std::log(std::max(t, x0_));
  const double a = a_, b = b_, g = g_;
  auto integrand = [l, a, b, g](double w) {
    const double u = l + w;
    double v = std::exp(-a * w);
    if (b != 0.0) v *= std::pow(u, -b);
    if (g != 0.0) v *= std::pow(std::log(u), -g);
    return v;
  };
  return k_ * std::exp(-a_ * l) * quad::semi_infinite(integrand, 0.0).value;
}

double LogPowerDensity::first_moment(double lo, double hi) const {
  if (lo < x0_) throw std::invalid_argument("LogPowerDensity::first_moment: lo below support");
  if (hi <= lo) return 0.0;
  const double a = a_, b = b_, g = g_;
  auto integrand = [a, b, g](double u) {
    double v = std::exp((1.0 - a) * u);
    if (b != 0.0) v *= std::pow(u, -b);
    if (g != 0.0) v *= std::pow(std::log(u), -g);
    return v;
  };
  return k_ * quad::finite(integrand, std::log(lo), std::log(hi)).value;
}

TailInverter::TailInverter(std::function<double(double)> tail, double x_lo, std::size_t knots,
                           double min_level)
    : tail_(std::move(tail)), x_lo_(x_lo) {
  if (knots < 4) throw std::invalid_argument("TailInverter: too few knots");
  max_level_ = tail_(x_lo_);
  const double z_lo = std::log(x_lo_);
  double z_hi = z_lo + 1.0;
  while (tail_(std::exp(z_hi)) > min_level) {
    z_hi = z_lo + 2.0 * (z_hi - z_lo);
    if (z_hi > 700.0) throw std::runtime_error("TailInverter: tail does not reach the minimum level");
  }
  y_.resize(knots);
  z_.resize(knots);
  for (std::size_t i = 0; i < knots; ++i) {
    z_[i] = z_lo + (z_hi - z_lo) * static_cast<double>(i) / static_cast<double>(knots - 1);
    y_[i] = -std::log(tail_(std::exp(z_[i])));
  }
  for (std::size_t i = 1; i < knots; ++i) {
    if (!(y_[i] > y_[i - 1])) throw std::runtime_error("TailInverter: tail is not strictly decreasing");
  }

  // Fritsch-Butland weighted harmonic tangents keep the interpolant monotone.
  const std::size_t n = knots;
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = y_[i + 1] - y_[i];
    d[i] = (z_[i + 1] - z_[i]) / h[i];
  }
  slope_.assign(n, 0.0);
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
  }
}

double TailInverter::operator()(double w) const {
  if (w >= max_level_) return x_lo_;
  const double y = -std::log(w);
  if (y > y_.back()) return bisect(w);
  const auto it = std::upper_bound(y_.begin(), y_.end(), y);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - y_.begin()), y_.size() - 1) - 1;
  const double h = y_[i + 1] - y_[i];
  const double s = (y - y_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double z = (2 * s3 - 3 * s2 + 1) * z_[i] + (s3 - 2 * s2 + s) * h * slope_[i] +
                   (-2 * s3 + 3 * s2) * z_[i + 1] + (s3 - s2) * h * slope_[i + 1];
  return std::exp(z);
}

double TailInverter::bisect(double w) const {
  double lo = std::log(x_lo_);
  double hi = z_.back();
  while (tail_(std::exp(hi)) > w) {
    lo = hi;
    hi += 8.0;
    if (hi > 709.0) return std::exp(709.0);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::abs(hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail_(std::exp(mid)) > w) lo = mid;
    else hi = mid;
  }
  return std::exp(hi);
}

}  // namespace slln::detail
