#include "singex/first_shadows.hpp"

#include <cmath>
#include <stdexcept>

namespace singex {

namespace {

bool in_minus(double theta, double omega) {
  return std::abs(theta) <= omega / 2.0;
}

}  // namespace

double primal_even_first_shadow(int k, double omega, double r, double theta) {
  if (k == -1 || k == -2)
    throw std::invalid_argument("generic form invalid for k = -1, -2");
  theta = wrap_angle(theta);
  const double L = std::log(r);
  const double c1 = ((k + 1) * std::sin(omega) + std::sin((k + 1) * omega)) /
                    (kPi * (k + 1) * (k + 2));
  const double rp = std::pow(r, k + 2);
  if (in_minus(theta, omega)) {
    return c1 * rp * (L * std::cos((k + 2) * theta) - theta * std::sin((k + 2) * theta)) +
           rp * (std::cos(k * theta) / (k + 1) -
                 std::cos(omega) * std::cos((k + 2) * theta) / (k + 2));
  }
  const double tp = theta_plus(theta);
  return c1 * rp * (L * std::cos((k + 2) * theta) - tp * std::sin((k + 2) * theta)) +
         rp * std::cos((k + 1) * omega) * std::cos((k + 2) * theta) /
             double((k + 1) * (k + 2));
}

double primal_odd_first_shadow(int k, double omega, double r, double theta) {
  if (k == -1 || k == -2)
    throw std::invalid_argument("generic form invalid for k = -1, -2");
  theta = wrap_angle(theta);
  const double L = std::log(r);
  const double c1 = ((k + 1) * std::sin(omega) - std::sin((k + 1) * omega)) /
                    (kPi * (k + 1) * (k + 2));
  const double rp = std::pow(r, k + 2);
  if (in_minus(theta, omega)) {
    return c1 * rp * (L * std::sin((k + 2) * theta) + theta * std::cos((k + 2) * theta)) +
           rp * (std::sin(k * theta) / (k + 1) -
                 std::cos(omega) * std::sin((k + 2) * theta) / (k + 2));
  }
  const double tp = theta_plus(theta);
  return c1 * rp * (L * std::sin((k + 2) * theta) + tp * std::cos((k + 2) * theta)) -
         rp * std::cos((k + 1) * omega) * std::sin((k + 2) * theta) /
             double((k + 1) * (k + 2));
}

double dual_first_shadow(int k, int p, double omega, double r, double theta) {
  theta = wrap_angle(theta);
  const double L = std::log(r);
  const double so = std::sin(omega), co = std::cos(omega);
  const bool minus = in_minus(theta, omega);
  const double tp = theta_plus(theta);

  if (k == 0) {
    if (p != 0) throw std::invalid_argument("dual k=0 exists only for p=0");
    const double r2 = r * r;
    if (minus) {
      double v = (so / (2.0 * kPi)) * r2 *
                     (std::cos(2 * theta) * (L * L - theta * theta) -
                      2.0 * theta * std::sin(2 * theta) * L) +
                 ((omega - 2.0 * kPi) * co - 2.0 * so) / (2.0 * kPi) * r2 *
                     (std::cos(2 * theta) * L - theta * std::sin(2 * theta)) +
                 (co - kPi * so) / 4.0 * r2 * std::cos(2 * theta) + r2 * L - r2;
      return v / (-2.0 * kPi);
    }
    double v = (so / (2.0 * kPi)) * r2 *
                   (std::cos(2 * theta) * (L * L - tp * tp) -
                    2.0 * tp * std::sin(2 * theta) * L) +
               (omega * co - 2.0 * so) / (2.0 * kPi) * r2 *
                   (std::cos(2 * theta) * L - tp * std::sin(2 * theta)) -
               (3.0 * co + (2.0 * omega - kPi) * so) / 4.0 * r2 * std::cos(2 * theta);
    return v / (-2.0 * kPi);
  }

  if (k == 1) {
    if (p == 0) {
      if (minus)
        return (((so + omega - kPi) / kPi) * r * (L * std::cos(theta) - theta * std::sin(theta)) -
                co * r * std::cos(theta) +
                r * (L * std::cos(theta) + theta * std::sin(theta))) /
               (2.0 * kPi);
      return (((so + omega) / kPi) * r * (L * std::cos(theta) - tp * std::sin(theta)) -
              r * std::cos(theta)) /
             (2.0 * kPi);
    }
    if (minus)
      return (((so - omega + kPi) / kPi) * r * (L * std::sin(theta) + theta * std::cos(theta)) -
              co * r * std::sin(theta) -
              r * (L * std::sin(theta) - theta * std::cos(theta))) /
             (-2.0 * kPi);
    return (((so - omega) / kPi) * r * (L * std::sin(theta) + tp * std::cos(theta)) +
            r * std::sin(theta)) /
           (-2.0 * kPi);
  }

  if (k == 2) {
    if (p == 0) {
      if (minus)
        return ((so / kPi) * (L * L - theta * theta) -
                (so + (2.0 * kPi - omega) * co) / kPi * L - std::cos(2 * theta)) /
               (4.0 * kPi);
      return ((so / kPi) * (L * L - tp * tp) -
              (so + (2.0 * kPi - omega) * co) / kPi * L - co + (kPi - omega) * so) /
             (4.0 * kPi);
    }
    if (minus)
      return (-(so + (2.0 * kPi - omega) * co) / kPi * theta + std::sin(2 * theta)) /
             (-4.0 * kPi);
    return (-(so - omega * co) / kPi * tp) / (-4.0 * kPi);
  }

  // k >= 3: the generic forms at -k, scaled.
  if (p == 0)
    return primal_even_first_shadow(-k, omega, r, theta) / (2.0 * kPi * k);
  return -primal_odd_first_shadow(-k, omega, r, theta) / (2.0 * kPi * k);
}

}  // namespace singex
