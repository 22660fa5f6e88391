#pragma once

#include <array>
#include <limits>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "singex/angular.hpp"
#include "singex/quadrature.hpp"
#include "singex/series.hpp"

namespace singex {

enum class FieldProvenance : std::uint8_t { Manufactured, Solved, Series };

/// A field restricted to one circle r = R: value and radial derivative as
/// callables of theta (2 pi periodic, piecewise smooth with possible
/// C^1-only seams at +-omega/2).
struct FieldOnCircle {
  std::function<Complex(double)> value;
  std::function<Complex(double)> radial_derivative;
  FieldProvenance provenance = FieldProvenance::Manufactured;
  double quad_tol = 1e-10;
};

using CircleFieldFamily = std::function<FieldOnCircle(double)>;

/// R_0 = zeta R (1 + sqrt|log R|), the small parameter of all remainders.
double remainder_scale(double zeta, double R);

// ---- circle functionals --------------------------------------------------

/// Symmetric form: (1/R) int_{r=R} K A R dtheta.
Complex form_M(const FieldOnCircle& K, const FieldOnCircle& A, double R,
               const DomainConfig& config);
Complex form_M(const SingularSeries& K, const FieldOnCircle& A, double R,
               const DomainConfig& config);

/// Anti-symmetric form: int_{r=R} (K dA/dr - A dK/dr) R dtheta.
Complex form_J(const SingularSeries& K, const FieldOnCircle& A, double R,
               const DomainConfig& config);

/// Field assembled from weighted singular series (manufactured data).
FieldOnCircle series_field(
    const std::vector<std::pair<Complex, std::shared_ptr<const SingularSeries>>>& parts,
    double R);
CircleFieldFamily series_family(
    std::vector<std::pair<Complex, std::shared_ptr<const SingularSeries>>> parts);

// ---- coupling coefficients ------------------------------------------------

/// The R-independent cross coefficient of the extraction formula, evaluated
/// by angular quadrature of the profile products; proportional to
/// (i zeta^2)^ell.  Requires k >= 2 and 1 <= ell <= k/2.
Complex coupling_coefficient(int k, int p, int ell, const DomainConfig& config);

/// Cached lower-triangular coupling coefficients for one parity block.
class CouplingMatrix {
 public:
  static CouplingMatrix compute(const DomainConfig& config, int k_max, int p);
  Complex coeff(int k, int ell) const;  // zero outside the stored range
  int k_max() const { return k_max_; }

 private:
  int k_max_ = 0;
  int p_ = 0;
  std::map<std::pair<int, int>, Complex> entries_;
};

// ---- reports ---------------------------------------------------------------

struct SweepRow {
  double R = 0;
  Complex raw;        // uncorrected circle functional
  Complex corrected;  // after coupling / denominator corrections
  Complex error;      // corrected (or raw, per mode) minus reference
  double err_abs = 0;
  double model = 0;  // remainder model at this R
  bool corrected_flag = false;
};

struct CoefficientTrace {
  int k = 0;
  int p = 0;
  Complex lambda;  // estimate at the smallest R of the sweep
  double R_used = 0;
  std::vector<SweepRow> sweep;
  double fitted_slope = std::numeric_limits<double>::quiet_NaN();
  double expected_exponent = 0;
  std::string note;
};

struct ExtractionReport {
  std::string method;
  DomainConfig config;
  int m = 0;
  std::vector<CoefficientTrace> entries;

  const CoefficientTrace* find(int k, int p) const;
};

// ---- extraction methods ----------------------------------------------------

/// Quasi-dual extraction over an R sweep: evaluates the anti-symmetric form
/// against the order-m quasi-duals for k = 0..k_max, then solves the
/// lower-triangular same-parity coupling system for the coefficients.
/// Requires 2m+2 > k_max.  If `reference` maps (k,p) to the true value, the
/// sweep errors and slopes are filled; `error_on_raw` compares raw
/// functionals instead of corrected coefficients (the convention for solver
/// fields referenced at a small radius).
ExtractionReport quasidual_extract(
    const CircleFieldFamily& A, const DomainConfig& config, int k_max, int m,
    const std::vector<double>& R_grid, int p = 0,
    const std::map<std::pair<int, int>, Complex>* reference = nullptr,
    bool error_on_raw = false);

enum class MomentVariant : std::uint8_t { N1_one_term, N1_two_terms, N3 };

/// Angular moment coefficients of the first shadows (indices q = 0, 1).
struct MomentCoefficients {
  std::array<double, 2> m00{};  // (1/2pi) int Phi^{0,0}_{1,q}
  std::array<double, 2> m11{};  // (1/2pi) int sin(t) Phi^{1,1}_{1,q}
  std::array<double, 2> m10{};  // (1/pi)  int cos(t) Phi^{0,0}_{1,q}
};
MomentCoefficients moment_coefficients(const DomainConfig& config);

/// Method of moments at one radius (requires R <= 1 in nondimensional
/// units).  Produces estimates for (0,0), (1,0) and (1,1) according to the
/// chosen truncation variant.
ExtractionReport moments_extract(const FieldOnCircle& A, const DomainConfig& config,
                                 double R, MomentVariant variant);

enum class ExtractionMethod : std::uint8_t {
  QuasiDual,
  MomentsN1One,
  MomentsN1Two,
  MomentsN3
};

/// R-sweep convergence study: errors against the supplied reference, the
/// remainder model, and the least-squares slope with the model's log
/// factors divided out before fitting.  Needs at least 4 usable grid
/// points; with zeta = 0 exact recovery is flagged as "exact".
ExtractionReport convergence_study(
    ExtractionMethod method, const CircleFieldFamily& A, const DomainConfig& config,
    const std::vector<double>& R_grid, int k_max, int m,
    const std::map<std::pair<int, int>, Complex>& reference);

/// Geometric grid, n points from hi*R_domain down to lo*R_domain.
std::vector<double> default_r_grid(double R_domain, int n = 20, double hi = 0.4,
                                   double lo = 1e-4);

}  // namespace singex
