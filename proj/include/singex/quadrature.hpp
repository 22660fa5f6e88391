#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "singex/term_algebra.hpp"

namespace singex {

/// Panel-doubling failed to reach the requested relative agreement.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on the Legendre
/// polynomial; nodes symmetric, weights positive).
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  static GaussLegendre compute(int n);
  static const GaussLegendre& order16();
};

/// Composite Gauss-Legendre over theta in (-pi, pi] with panels split at
/// +-omega/2 and then uniformly; the panel count doubles until successive
/// results agree to rel_tol (relative to max(|I|, integral of |f|) so that
/// vanishing integrals converge too).
Complex integrate_circle(const std::function<Complex(double)>& f, double omega,
                         double rel_tol = 1e-10, int max_rounds = 10);

/// Least-squares slope of log(y) against log(x); pairs with y <= floor are
/// skipped.  Returns NaN when fewer than 4 usable points remain.
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y, double floor = 0.0);

}  // namespace singex
