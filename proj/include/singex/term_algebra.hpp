#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace singex {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Internal-consistency failure of the symbolic engine (an invariant that
/// should hold by construction was violated).
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation at a point where the function is singular (r = 0 with a
/// negative power or a positive log power).
struct SingularEvalError : std::domain_error {
  using std::domain_error::domain_error;
};

// The plane is split into the conducting wedge S- (|theta| < omega/2) and
// its complement S+.  Each sector carries its own complex variable:
// z on S-, z_+ = -z on S+, so that both logs stay on the principal branch.
enum class Sector : std::uint8_t { Minus, Plus };

enum class Wrt : std::uint8_t { Var, ConjVar };

// The two rays of the sector interface, theta = +omega/2 and -omega/2.
enum class Ray : std::uint8_t { PlusOmegaHalf, MinusOmegaHalf };

/// One monomial  coeff * v^a * conj(v)^b * log^q(v) * log^s(conj v)
/// in the sector variable v (z or z_+).  Canonical terms never mix the two
/// logs: q*s == 0.
struct Term {
  Complex coeff{0.0, 0.0};
  int a = 0;
  int b = 0;
  int q = 0;
  int s = 0;
};

/// Restriction of a homogeneous TermSum to one ray of the interface:
/// r^homogeneity * sum_t coeffs[t] * log^t r.
struct TraceLogPolynomial {
  Ray ray = Ray::PlusOmegaHalf;
  int homogeneity = 0;
  std::vector<Complex> coeffs;  // index = power of log r

  int degree() const;  // highest index with a nonzero coefficient, -1 if none
  double max_abs() const;
  bool is_zero(double tol) const { return max_abs() <= tol; }
  Complex eval(double log_r) const;
  TraceLogPolynomial& operator+=(const TraceLogPolynomial& other);
  TraceLogPolynomial& operator*=(Complex c);
};

/// A finite sum of Terms restricted to one sector, kept in canonical form:
/// sorted by (a desc, b asc, q desc, s desc), equal keys merged, and terms
/// with |coeff| < 1e-14 * max|coeff| pruned.  Immutable in spirit: all
/// operations return new values.
class TermSum {
 public:
  TermSum() = default;
  explicit TermSum(Sector sector) : sector_(sector) {}
  TermSum(Sector sector, std::vector<Term> terms);

  static TermSum monomial(Sector sector, Complex coeff, int a, int b, int q = 0,
                          int s = 0);

  Sector sector() const { return sector_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_homogeneous() const;
  /// Common degree a+b; throws EngineError if the sum is inhomogeneous.
  int homogeneity() const;
  /// Largest q+s over terms (degree as polynomial of log r), -1 if empty.
  int log_degree() const;
  double max_abs_coeff() const;

  TermSum operator+(const TermSum& other) const;
  TermSum operator-(const TermSum& other) const;
  TermSum operator*(Complex c) const;
  TermSum& operator+=(const TermSum& other);

  /// Conjugation of the represented function: swaps (a,q) <-> (b,s) and
  /// conjugates coefficients.
  TermSum conjugate() const;

  /// Splits into real- and imaginary-coefficient parts: *this == first + i*second,
  /// both with real coefficients.
  std::pair<TermSum, TermSum> split_coeff_real_imag() const;

  TermSum differentiate(Wrt wrt) const;

  /// Exact antiderivative: differentiate(antiderivative(f, w), w) == f.
  /// A term with exponent -1 in the integrated variable raises its log power
  /// (resonance); mixed logs would arise only from inputs that violate the
  /// q*s == 0 invariant and throw EngineError.
  TermSum antiderivative(Wrt wrt) const;

  /// Scaling derivative r d/dr = z d/dz + conj(z) d/dconj(z), sector-local.
  TermSum radial_scaling_derivative() const;
  /// v d/dv (v the sector variable).
  TermSum var_scaling_derivative() const;
  /// conj(v) d/dconj(v).
  TermSum conj_scaling_derivative() const;

  /// Evaluates at (r, theta), theta measured from the sector bisector of S-;
  /// theta is wrapped to (-pi, pi].  Throws std::domain_error if theta lies
  /// strictly inside the other sector, SingularEvalError at r = 0 when a
  /// negative power or positive log power is present.
  Complex evaluate(double r, double theta, double omega) const;

  /// Restriction to one interface ray as a polynomial in log r.
  /// Requires a homogeneous sum.
  TraceLogPolynomial restrict_to_ray(Ray ray, double omega) const;

 private:
  void canonicalize();

  Sector sector_ = Sector::Minus;
  std::vector<Term> terms_;
};

TermSum combine(const std::vector<std::pair<Complex, TermSum>>& parts);

/// Largest coefficient difference between two sums over the union of their
/// monomial keys.
double max_coeff_difference(const TermSum& x, const TermSum& y);

/// theta_+ of the S+ variable: theta - pi for theta in (0, pi],
/// theta + pi for theta in [-pi, 0).
double theta_plus(double theta);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

/// Angle of the sector variable on a ray: +-omega/2 on S-,
/// +-(omega/2 - pi) on S+ (sign matching the ray).
double ray_angle(Sector sector, Ray ray, double omega);

std::string to_string(const TermSum& f);

}  // namespace singex
