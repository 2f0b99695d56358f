#include "slln/log_power.hpp"

#include <stdexcept>

namespace slln {

LogPowerAsym::LogPowerAsym(double c, Rational a, Rational b, Rational g, double t0)
    : scale(c), alpha(a), beta(b), gamma(g), valid_from(t0) {
  if (!(c > 0.0)) throw std::invalid_argument("LogPowerAsym: scale must be positive");
  // ln ln t must be positive on the validity range
  if (!(t0 >= std::exp(std::numbers::e) * (1.0 - 1e-15))) {
    throw std::invalid_argument("LogPowerAsym: valid_from must be >= e^e");
  }
}

double LogPowerAsym::operator()(double t) const {
  const double lt = std::log(t);
  return scale * std::exp(-alpha.to_double() * lt - beta.to_double() * std::log(lt) -
                          gamma.to_double() * std::log(std::log(lt)));
}

}  // namespace slln
