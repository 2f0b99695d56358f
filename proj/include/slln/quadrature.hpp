#pragma once

#include <functional>

namespace slln::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [a, inf) for integrands with at least exponential decay.
Result semi_infinite(const Integrand& f, double a, double rel_tol = 1e-12);

/// Adaptive Gauss-Kronrod on the finite interval [a, b]. Integrands that are
/// themselves computed by quadrature carry noise near 1e-12 and should be
/// integrated with a looser tolerance and a shallow depth.
Result finite(const Integrand& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 20);

}  // namespace slln::quad
