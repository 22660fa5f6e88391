#include "singex/term_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace singex {

namespace {

constexpr double kPruneRel = 1e-14;

bool key_less(const Term& x, const Term& y) {
  if (x.a != y.a) return x.a > y.a;
  if (x.b != y.b) return x.b < y.b;
  if (x.q != y.q) return x.q > y.q;
  return x.s > y.s;
}

bool key_equal(const Term& x, const Term& y) {
  return x.a == y.a && x.b == y.b && x.q == y.q && x.s == y.s;
}

// (L + i*phi)^q expanded as a polynomial in L.
std::vector<Complex> log_shift_powers(int q, double phi) {
  std::vector<Complex> out(static_cast<std::size_t>(q) + 1, Complex(0, 0));
  // binomial row
  double binom = 1.0;
  Complex ip(0.0, phi);
  Complex ip_pow(1.0, 0.0);
  for (int t = q; t >= 0; --t) {
    out[static_cast<std::size_t>(t)] = binom * ip_pow;
    ip_pow *= ip;
    binom = binom * t / (q - t + 1.0);
  }
  return out;
}

}  // namespace

int TraceLogPolynomial::degree() const {
  for (int t = static_cast<int>(coeffs.size()) - 1; t >= 0; --t)
    if (std::abs(coeffs[static_cast<std::size_t>(t)]) != 0.0) return t;
  return -1;
}

double TraceLogPolynomial::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

Complex TraceLogPolynomial::eval(double log_r) const {
  Complex v(0, 0);
  for (int t = static_cast<int>(coeffs.size()) - 1; t >= 0; --t)
    v = v * log_r + coeffs[static_cast<std::size_t>(t)];
  return v;
}

TraceLogPolynomial& TraceLogPolynomial::operator+=(const TraceLogPolynomial& other) {
  if (other.degree() < 0) return *this;
  if (degree() < 0) {
    homogeneity = other.homogeneity;
  } else if (homogeneity != other.homogeneity || ray != other.ray) {
    throw EngineError("trace polynomial mismatch in +=");
  }
  if (other.coeffs.size() > coeffs.size()) coeffs.resize(other.coeffs.size());
  for (std::size_t t = 0; t < other.coeffs.size(); ++t) coeffs[t] += other.coeffs[t];
  return *this;
}

TraceLogPolynomial& TraceLogPolynomial::operator*=(Complex c) {
  for (auto& x : coeffs) x *= c;
  return *this;
}

TermSum::TermSum(Sector sector, std::vector<Term> terms)
    : sector_(sector), terms_(std::move(terms)) {
  canonicalize();
}

TermSum TermSum::monomial(Sector sector, Complex coeff, int a, int b, int q, int s) {
  return TermSum(sector, {Term{coeff, a, b, q, s}});
}

void TermSum::canonicalize() {
  for (const Term& t : terms_) {
    if (t.q < 0 || t.s < 0) throw EngineError("negative log power");
    if (t.q > 0 && t.s > 0)
      throw EngineError("mixed logs produced: q=" + std::to_string(t.q) +
                        " s=" + std::to_string(t.s));
  }
  std::sort(terms_.begin(), terms_.end(), key_less);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (!merged.empty() && key_equal(merged.back(), t))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  double mx = 0.0;
  for (const Term& t : merged) mx = std::max(mx, std::abs(t.coeff));
  std::vector<Term> pruned;
  pruned.reserve(merged.size());
  for (const Term& t : merged)
    if (std::abs(t.coeff) >= kPruneRel * mx && std::abs(t.coeff) > 0.0)
      pruned.push_back(t);
  terms_ = std::move(pruned);
}

bool TermSum::is_homogeneous() const {
  for (const Term& t : terms_)
    if (t.a + t.b != terms_.front().a + terms_.front().b) return false;
  return true;
}

int TermSum::homogeneity() const {
  if (terms_.empty()) throw EngineError("homogeneity of empty sum");
  if (!is_homogeneous()) throw EngineError("inhomogeneous TermSum");
  return terms_.front().a + terms_.front().b;
}

int TermSum::log_degree() const {
  int d = -1;
  for (const Term& t : terms_) d = std::max(d, t.q + t.s);
  return d;
}

double TermSum::max_abs_coeff() const {
  double m = 0.0;
  for (const Term& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

TermSum TermSum::operator+(const TermSum& other) const {
  if (!other.terms_.empty() && !terms_.empty() && other.sector_ != sector_)
    throw EngineError("sector mismatch in +");
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return TermSum(terms_.empty() ? other.sector_ : sector_, std::move(all));
}

TermSum TermSum::operator-(const TermSum& other) const {
  return *this + other * Complex(-1.0, 0.0);
}

TermSum TermSum::operator*(Complex c) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff *= c;
  return TermSum(sector_, std::move(out));
}

TermSum& TermSum::operator+=(const TermSum& other) {
  *this = *this + other;
  return *this;
}

TermSum TermSum::conjugate() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_)
    out.push_back(Term{std::conj(t.coeff), t.b, t.a, t.s, t.q});
  return TermSum(sector_, std::move(out));
}

std::pair<TermSum, TermSum> TermSum::split_coeff_real_imag() const {
  std::vector<Term> re, im;
  for (const Term& t : terms_) {
    if (t.coeff.real() != 0.0) re.push_back(Term{Complex(t.coeff.real(), 0), t.a, t.b, t.q, t.s});
    if (t.coeff.imag() != 0.0) im.push_back(Term{Complex(t.coeff.imag(), 0), t.a, t.b, t.q, t.s});
  }
  return {TermSum(sector_, std::move(re)), TermSum(sector_, std::move(im))};
}

TermSum TermSum::differentiate(Wrt wrt) const {
  std::vector<Term> out;
  out.reserve(2 * terms_.size());
  for (const Term& t : terms_) {
    if (wrt == Wrt::Var) {
      if (t.a != 0) out.push_back(Term{t.coeff * double(t.a), t.a - 1, t.b, t.q, t.s});
      if (t.q > 0) out.push_back(Term{t.coeff * double(t.q), t.a - 1, t.b, t.q - 1, t.s});
    } else {
      if (t.b != 0) out.push_back(Term{t.coeff * double(t.b), t.a, t.b - 1, t.q, t.s});
      if (t.s > 0) out.push_back(Term{t.coeff * double(t.s), t.a, t.b - 1, t.q, t.s - 1});
    }
  }
  return TermSum(sector_, std::move(out));
}

TermSum TermSum::antiderivative(Wrt wrt) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    // Work with the exponent/log pair of the integrated variable.
    const int e = (wrt == Wrt::Var) ? t.a : t.b;
    const int lg = (wrt == Wrt::Var) ? t.q : t.s;
    const int other_lg = (wrt == Wrt::Var) ? t.s : t.q;
    if (e == -1) {
      if (other_lg > 0)
        throw EngineError("antiderivative would mix logs (resonance against foreign log)");
      // integral of v^-1 log^lg v = log^(lg+1) v / (lg+1)
      Term r = t;
      r.coeff /= double(lg + 1);
      if (wrt == Wrt::Var) {
        r.a = 0;
        r.q = lg + 1;
      } else {
        r.b = 0;
        r.s = lg + 1;
      }
      out.push_back(r);
      continue;
    }
    // integral of v^e log^lg v = v^(e+1) sum_{t=0..lg} (-1)^(lg-t) lg!/t! /
    // (e+1)^(lg-t+1) log^t v   (repeated integration by parts)
    double factorial_ratio = 1.0;  // lg!/t! accumulated downward
    double sign = 1.0;
    double denom = e + 1.0;
    for (int tt = lg; tt >= 0; --tt) {
      Term r = t;
      r.coeff = t.coeff * sign * factorial_ratio / denom;
      if (wrt == Wrt::Var) {
        r.a = e + 1;
        r.q = tt;
      } else {
        r.b = e + 1;
        r.s = tt;
      }
      out.push_back(r);
      factorial_ratio *= tt;  // (lg!/ (tt-1)!) = (lg!/tt!) * tt
      sign = -sign;
      denom *= (e + 1.0);
    }
  }
  return TermSum(sector_, std::move(out));
}

TermSum TermSum::var_scaling_derivative() const {
  std::vector<Term> out;
  out.reserve(2 * terms_.size());
  for (const Term& t : terms_) {
    if (t.a != 0) out.push_back(Term{t.coeff * double(t.a), t.a, t.b, t.q, t.s});
    if (t.q > 0) out.push_back(Term{t.coeff * double(t.q), t.a, t.b, t.q - 1, t.s});
  }
  return TermSum(sector_, std::move(out));
}

TermSum TermSum::conj_scaling_derivative() const {
  std::vector<Term> out;
  out.reserve(2 * terms_.size());
  for (const Term& t : terms_) {
    if (t.b != 0) out.push_back(Term{t.coeff * double(t.b), t.a, t.b, t.q, t.s});
    if (t.s > 0) out.push_back(Term{t.coeff * double(t.s), t.a, t.b, t.q, t.s - 1});
  }
  return TermSum(sector_, std::move(out));
}

TermSum TermSum::radial_scaling_derivative() const {
  return var_scaling_derivative() + conj_scaling_derivative();
}

double wrap_angle(double theta) {
  double t = std::remainder(theta, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  return t;
}

double theta_plus(double theta) {
  return (theta > 0.0) ? theta - kPi : theta + kPi;
}

double ray_angle(Sector sector, Ray ray, double omega) {
  const double half = omega / 2.0;
  if (sector == Sector::Minus) return ray == Ray::PlusOmegaHalf ? half : -half;
  return ray == Ray::PlusOmegaHalf ? half - kPi : kPi - half;
}

Complex TermSum::evaluate(double r, double theta, double omega) const {
  if (r < 0.0) throw std::domain_error("negative radius");
  theta = wrap_angle(theta);
  const double half = omega / 2.0;
  const double tol = 1e-12;
  double th;
  if (sector_ == Sector::Minus) {
    if (std::abs(theta) > half + tol)
      throw std::domain_error("theta outside sector S-");
    th = theta;
  } else {
    if (std::abs(theta) < half - tol)
      throw std::domain_error("theta outside sector S+");
    th = theta_plus(theta == 0.0 ? kPi : theta);
  }
  if (r == 0.0) {
    Complex v(0, 0);
    for (const Term& t : terms_) {
      if (t.a + t.b < 0 || t.q + t.s > 0)
        throw SingularEvalError("singular evaluation at r = 0");
      if (t.a + t.b == 0) v += t.coeff;
    }
    return v;
  }
  const double L = std::log(r);
  Complex v(0, 0);
  for (const Term& t : terms_) {
    Complex lp = std::pow(Complex(L, th), t.q) * std::pow(Complex(L, -th), t.s);
    v += t.coeff * std::pow(r, t.a + t.b) *
         std::polar(1.0, (t.a - t.b) * th) * lp;
  }
  return v;
}

TraceLogPolynomial TermSum::restrict_to_ray(Ray ray, double omega) const {
  TraceLogPolynomial out;
  out.ray = ray;
  if (terms_.empty()) return out;
  out.homogeneity = homogeneity();
  out.coeffs.assign(static_cast<std::size_t>(log_degree()) + 1, Complex(0, 0));
  const double phi = ray_angle(sector_, ray, omega);
  for (const Term& t : terms_) {
    const Complex phase = t.coeff * std::polar(1.0, (t.a - t.b) * phi);
    // (L + i phi)^q (L - i phi)^s as a polynomial in L
    const auto pq = log_shift_powers(t.q, phi);
    const auto ps = log_shift_powers(t.s, -phi);
    for (std::size_t i = 0; i < pq.size(); ++i)
      for (std::size_t j = 0; j < ps.size(); ++j)
        out.coeffs[i + j] += phase * pq[i] * ps[j];
  }
  return out;
}

TermSum combine(const std::vector<std::pair<Complex, TermSum>>& parts) {
  if (parts.empty()) return TermSum();
  TermSum acc(parts.front().second.sector());
  for (const auto& [c, f] : parts) acc += f * c;
  return acc;
}

double max_coeff_difference(const TermSum& x, const TermSum& y) {
  std::map<std::tuple<int, int, int, int>, Complex> acc;
  for (const Term& t : x.terms()) acc[{t.a, t.b, t.q, t.s}] += t.coeff;
  for (const Term& t : y.terms()) acc[{t.a, t.b, t.q, t.s}] -= t.coeff;
  double m = 0.0;
  for (const auto& [key, c] : acc) m = std::max(m, std::abs(c));
  return m;
}

std::string to_string(const TermSum& f) {
  std::ostringstream os;
  const char* v = f.sector() == Sector::Minus ? "z" : "z+";
  bool first = true;
  for (const Term& t : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.real();
    if (t.coeff.imag() != 0.0) os << (t.coeff.imag() > 0 ? "+" : "") << t.coeff.imag() << "i";
    os << ")";
    if (t.a != 0) os << " " << v << "^" << t.a;
    if (t.b != 0) os << " ~" << v << "^" << t.b;
    if (t.q != 0) os << " log^" << t.q << "(" << v << ")";
    if (t.s != 0) os << " log^" << t.s << "(~" << v << ")";
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace singex
