#pragma once

#include <functional>

#include "singex/extraction.hpp"
#include "singex/series.hpp"

namespace singex {

/// Complex nodal field on a polar grid: radial nodes graded geometrically
/// toward the corner (uniform in log r), uniform angles with +-omega/2 on
/// grid.  values are ring-major: values[i*n_theta + j] at (r[i], theta[j]);
/// center holds the value at r = 0.
struct PolarField {
  std::vector<double> r;      // ascending, r.back() = R_domain
  std::vector<double> theta;  // n_theta uniform angles in (-pi, pi]
  std::vector<Complex> values;
  Complex center{0, 0};
  double omega = 0;
  double zeta = 0;
  double R_domain = 0;

  std::size_t n_r() const { return r.size(); }
  std::size_t n_theta() const { return theta.size(); }
  Complex at(std::size_t i, std::size_t j) const {
    return values[i * n_theta() + j];
  }
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Smallest n >= n_theta such that +-omega/2 and pi fall on the uniform
/// angular grid theta_j = -pi + j * 2pi/n.
int adjust_n_theta(int n_theta, double omega);

/// Second-order finite differences for -Delta u + 4 i zeta^2 1_{S-} u = f
/// on the disk r < R_domain with Dirichlet data on the boundary ring; the
/// interface carries half weight of the zeroth-order coefficient, the
/// center unknown is closed by the first-ring average.  Sparse complex
/// direct solve; residual checked to 1e-10.
PolarField solve_disk_problem(
    const DomainConfig& config, double R_domain, int N_r, int N_theta,
    const std::function<Complex(double)>& dirichlet,
    const std::function<Complex(double, double)>& source);

/// The disk test problem: Dirichlet data |theta| / (2 pi), no source.
PolarField solve_disk(const DomainConfig& config, double R_domain, int N_r,
                      int N_theta);

/// Circle trace of the grid field: bicubic interpolation in (log r, theta)
/// with one-sided stencils across the interface rays; radial derivative by
/// 4th-order differencing of the interpolant.
FieldOnCircle field_on_circle(const PolarField& field, double R);

}  // namespace singex
