#include "slln/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <limits>

namespace slln::quad {

Result semi_infinite(const Integrand& f, double a, double rel_tol) {
  // exp_sinh grows its abscissa tables lazily, so keep one per thread.
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  Result r;
  double l1 = 0.0;
  r.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol, &r.error, &l1);
  return r;
}

Result finite(const Integrand& f, double a, double b, double rel_tol, unsigned max_depth) {
  Result r;
  if (a == b) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &r.error);
  return r;
}

}  // namespace slln::quad
