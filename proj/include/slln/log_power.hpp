#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "slln/rational.hpp"

namespace slln {

/// Exponent triple of t^{-alpha} (ln t)^{-beta} (ln ln t)^{-gamma}.
struct LogPowerExponents {
  Rational alpha;
  Rational beta;
  Rational gamma;

  friend bool operator==(const LogPowerExponents&, const LogPowerExponents&) = default;
  [[nodiscard]] std::string str() const {
    return "(" + alpha.str() + ", " + beta.str() + ", " + gamma.str() + ")";
  }
};

/// g(t) = scale * t^{-alpha} (ln t)^{-beta} (ln ln t)^{-gamma} for t >= valid_from.
struct LogPowerAsym {
  double scale = 1.0;
  Rational alpha;
  Rational beta;
  Rational gamma;
  double valid_from = std::exp(std::numbers::e);

  LogPowerAsym() = default;
  LogPowerAsym(double c, Rational a, Rational b, Rational g, double t0 = std::exp(std::numbers::e));

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] LogPowerExponents exponents() const { return {alpha, beta, gamma}; }
};

}  // namespace slln
