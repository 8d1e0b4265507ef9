#ifndef GMC_QUADRATURE_HPP_
#define GMC_QUADRATURE_HPP_

#include <cmath>
#include <cstddef>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gmc/errors.hpp"

namespace gmc::quad {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t levels = 0;
};

/// Tanh-sinh quadrature over (a, b) for integrands with integrable endpoint
/// singularities. The integrand receives (x, distance_to_a, distance_to_b),
/// with the distance to the nearer endpoint exact rather than recomputed from
/// x, so power-law singularities are resolved down to subnormal distances.
/// Throws ConvergenceError if the error estimate exceeds tol * |value| (or
/// tol when the value is tiny).
template <class F>
QuadResult integrate_singular(F&& f, double a, double b, double tol = 1e-12,
                              std::size_t max_refinements = 15) {
  boost::math::quadrature::tanh_sinh<double> integrator(max_refinements);
  const double width = b - a;
  auto g = [&](double x, double xc) {
    if (xc < 0.0) {
      const double da = -xc;
      return f(x, da, width - da);
    }
    return f(x, width - xc, xc);
  };
  QuadResult r;
  double l1 = 0.0;
  r.value = integrator.integrate(g, a, b, tol, &r.error, &l1, &r.levels);
  if (!std::isfinite(r.value) || r.error > 10.0 * tol * std::max(l1, 1e-300)) {
    throw ConvergenceError("tanh-sinh quadrature: error estimate " +
                           std::to_string(r.error) + " exceeds budget on (" +
                           std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  return r;
}

}  // namespace gmc::quad

#endif  // GMC_QUADRATURE_HPP_
