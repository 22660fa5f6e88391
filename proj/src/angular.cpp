#include "singex/angular.hpp"

#include <cmath>
#include <sstream>

namespace singex {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

// Coefficient of log^n r (value or d/dtheta) of f evaluated at angle
// theta_var of its own sector variable:
//   sum_t c * e^{i(a-b)theta} * [coeff of L^n in (L+i theta)^q (L-i theta)^s]
Complex AngularTable::profile(const TermSum& f, int n, double th, bool deriv) const {
  Complex acc(0, 0);
  for (const Term& t : f.terms()) {
    // B(theta) = sum over q'+s' = n of binom terms; powers of theta collected
    Complex b(0, 0), db(0, 0);
    for (int qp = 0; qp <= t.q; ++qp) {
      const int sp = n - qp;
      if (sp < 0 || sp > t.s) continue;
      const int u = t.q - qp, v = t.s - sp;  // leftover i theta powers
      const Complex iuv = std::pow(Complex(0, 1), u) * std::pow(Complex(0, -1), v);
      const double w = binom(t.q, qp) * binom(t.s, sp);
      b += w * iuv * std::pow(th, u + v);
      if (u + v > 0) db += w * iuv * double(u + v) * std::pow(th, u + v - 1);
    }
    const Complex ph = std::polar(1.0, (t.a - t.b) * th);
    if (!deriv)
      acc += t.coeff * ph * b;
    else
      acc += t.coeff * ph * (Complex(0, double(t.a - t.b)) * b + db);
  }
  return acc;
}

double AngularTable::extract(Complex a) const {
  if (p_ == 0) return a.real();
  return chain_->kind == ChainKind::Primal ? a.imag() : -a.imag();
}

int AngularTable::max_log(int j) const {
  if (j < 0 || j > depth()) return -1;
  return chain_->pairs[static_cast<std::size_t>(j)].log_degree();
}

double AngularTable::value(int j, int n, double theta) const {
  if (j < 0 || j > depth() || n < 0 || n > max_log(j)) return 0.0;
  theta = wrap_angle(theta);
  const auto& pair = chain_->pairs[static_cast<std::size_t>(j)];
  if (std::abs(theta) <= chain_->omega / 2.0)
    return extract(profile(pair.minus, n, theta, false));
  return extract(profile(pair.plus, n, theta_plus(theta), false));
}

double AngularTable::dtheta(int j, int n, double theta) const {
  if (j < 0 || j > depth() || n < 0 || n > max_log(j)) return 0.0;
  theta = wrap_angle(theta);
  const auto& pair = chain_->pairs[static_cast<std::size_t>(j)];
  if (std::abs(theta) <= chain_->omega / 2.0)
    return extract(profile(pair.minus, n, theta, true));
  return extract(profile(pair.plus, n, theta_plus(theta), true));
}

AngularTable AngularTable::decompose(std::shared_ptr<const ShadowChain> chain, int p) {
  if (chain->k == 0 && p == 1)
    throw std::invalid_argument("k=0, p=1 is excluded");
  AngularTable table(std::move(chain), p);
  // C^1 check across both seams for every profile
  const double omega = table.chain_->omega;
  const double mag = std::max(table.chain_->magnitude(), 1.0);
  for (int j = 0; j <= table.depth(); ++j) {
    const auto& pair = table.chain_->pairs[static_cast<std::size_t>(j)];
    for (int n = 0; n <= table.max_log(j); ++n) {
      for (double seam : {omega / 2.0, -omega / 2.0}) {
        const double vin = table.extract(table.profile(pair.minus, n, seam, false));
        const double vout =
            table.extract(table.profile(pair.plus, n, theta_plus(seam), false));
        const double din = table.extract(table.profile(pair.minus, n, seam, true));
        const double dout =
            table.extract(table.profile(pair.plus, n, theta_plus(seam), true));
        if (std::abs(vin - vout) > 1e-9 * mag || std::abs(din - dout) > 1e-9 * mag) {
          std::ostringstream os;
          os << "angular profile not C^1 at seam: j=" << j << " n=" << n
             << " dv=" << std::abs(vin - vout) << " dd=" << std::abs(din - dout);
          throw EngineError(os.str());
        }
      }
    }
  }
  return table;
}

}  // namespace singex
