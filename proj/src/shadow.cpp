#include "singex/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace singex {

namespace {

void validate_omega(double omega) {
  if (!(omega >= 1e-3 && omega <= 2.0 * kPi - 1e-3))
    throw std::invalid_argument("omega outside [1e-3, 2*pi - 1e-3]");
}

double sector_sign(int lambda) { return (lambda % 2 == 0) ? 1.0 : -1.0; }

Complex coeff_at(const TraceLogPolynomial& p, int t) {
  if (t < 0 || t >= static_cast<int>(p.coeffs.size())) return {0.0, 0.0};
  return p.coeffs[static_cast<std::size_t>(t)];
}

int degree_above(const TraceLogPolynomial& p, double tol) {
  for (int t = static_cast<int>(p.coeffs.size()) - 1; t >= 0; --t)
    if (std::abs(p.coeffs[static_cast<std::size_t>(t)]) > tol) return t;
  return -1;
}

// Jump traces on the +omega/2 ray of a candidate pair (V, W).  For
// lambda != 0 the dz- and dzbar-jumps; for lambda == 0 the angular
// derivative jump and the Dirichlet jump.
struct Defects {
  TraceLogPolynomial g;
  TraceLogPolynomial h;
};

TraceLogPolynomial restricted(const TermSum& f, Ray ray, double omega) {
  return f.restrict_to_ray(ray, omega);
}

Defects compute_defects(const TermSum& V, const TermSum& W, int lambda,
                        double omega, Ray ray) {
  Defects d;
  if (lambda != 0) {
    d.g = restricted(V.differentiate(Wrt::Var), ray, omega);
    d.g += restricted(W.differentiate(Wrt::Var), ray, omega);
    d.h = restricted(V.differentiate(Wrt::ConjVar), ray, omega);
    d.h += restricted(W.differentiate(Wrt::ConjVar), ray, omega);
  } else {
    auto angular = [](const TermSum& f) {
      return f.var_scaling_derivative() - f.conj_scaling_derivative();
    };
    d.g = restricted(angular(V), ray, omega);
    {
      auto wpart = restricted(angular(W), ray, omega);
      wpart *= Complex(-1.0, 0.0);
      d.g += wpart;
    }
    d.h = restricted(V, ray, omega);
    {
      auto wpart = restricted(W, ray, omega);
      wpart *= Complex(-1.0, 0.0);
      d.h += wpart;
    }
  }
  return d;
}

struct AnsatzElement {
  TermSum v{Sector::Minus};
  TermSum w{Sector::Plus};
};

// Correction basis per congruence level.  For lambda != 0 the four-element
// family {z^l log^(n+1) z, zbar^l log^(n+1) zbar (paired across sectors),
// z^l log^n z, zbar+^l log^n zbar+}; for lambda == 0 the log-polynomial
// families with the extra degree, plus the constant at the final level.
std::vector<AnsatzElement> make_ansatz(int lambda, int n) {
  using TS = TermSum;
  const Complex one(1.0, 0.0);
  std::vector<AnsatzElement> es;
  if (lambda != 0) {
    const Complex sg(sector_sign(lambda), 0.0);
    es.push_back({TS::monomial(Sector::Minus, one, lambda, 0, n + 1, 0),
                  TS::monomial(Sector::Plus, sg, lambda, 0, n + 1, 0)});
    es.push_back({TS::monomial(Sector::Minus, one, 0, lambda, 0, n + 1),
                  TS::monomial(Sector::Plus, sg, 0, lambda, 0, n + 1)});
    es.push_back({TS::monomial(Sector::Minus, one, lambda, 0, n, 0), TS(Sector::Plus)});
    es.push_back({TS(Sector::Minus), TS::monomial(Sector::Plus, sg, 0, lambda, 0, n)});
  } else if (n >= 1) {
    es.push_back({TS::monomial(Sector::Minus, one, 0, 0, n + 2, 0),
                  TS::monomial(Sector::Plus, one, 0, 0, n + 2, 0)});
    es.push_back({TS::monomial(Sector::Minus, one, 0, 0, 0, n + 2),
                  TS::monomial(Sector::Plus, one, 0, 0, 0, n + 2)});
    es.push_back({TS::monomial(Sector::Minus, one, 0, 0, n + 1, 0), TS(Sector::Plus)});
    es.push_back({TS(Sector::Minus), TS::monomial(Sector::Plus, one, 0, 0, 0, n + 1)});
  } else {
    es.push_back({TS::monomial(Sector::Minus, one, 0, 0, 2, 0),
                  TS::monomial(Sector::Plus, one, 0, 0, 2, 0)});
    es.push_back({TS::monomial(Sector::Minus, one, 0, 0, 0, 2),
                  TS::monomial(Sector::Plus, one, 0, 0, 0, 2)});
    es.push_back({TS::monomial(Sector::Minus, one, 0, 0, 1, 0), TS(Sector::Plus)});
    es.push_back({TS(Sector::Minus), TS::monomial(Sector::Plus, one, 0, 0, 1, 0)});
    es.push_back({TS(Sector::Minus), TS::monomial(Sector::Plus, one, 0, 0, 0, 1)});
    es.push_back({TS(Sector::Minus), TS::monomial(Sector::Plus, one, 0, 0, 0, 0)});
  }
  return es;
}

// Gaussian elimination with partial pivoting; square systems of size <= 6.
std::vector<double> solve_dense(std::vector<std::vector<double>> A,
                                std::vector<double> b) {
  const std::size_t m = A.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-300)
      throw EngineError("singular correction system");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = b[i] / A[i][i];
  return x;
}

// Exact interior primitive: dz dzbar P = f, term by term, with the log
// power raised on resonant (exponent -1) factors.
TermSum exact_primitive(const TermSum& f) {
  return f.antiderivative(Wrt::ConjVar).antiderivative(Wrt::Var);
}

// Interface corrector for a source with real coefficients.  The trace
// defects then satisfy the conjugate-pair convention across the two rays,
// so matching the +omega/2 ray with real basis weights suffices; the
// -omega/2 ray is verified by the caller.
std::pair<TermSum, TermSum> solve_symmetric(const TermSum& source, int lambda,
                                            double omega) {
  TermSum V = exact_primitive(source);
  TermSum W(Sector::Plus);

  const int n0 = std::max(source.log_degree(), 0);
  const int max_passes = 2 * (n0 + 2) + 4;
  const double scale0 = std::max(source.max_abs_coeff(), 1e-300);

  for (int pass = 0; pass < max_passes; ++pass) {
    const double scale =
        std::max({scale0, V.max_abs_coeff(), W.max_abs_coeff()});
    const double tol = 1e-13 * scale;
    Defects d = compute_defects(V, W, lambda, omega, Ray::PlusOmegaHalf);
    const int dg = degree_above(d.g, tol);
    const int dh = degree_above(d.h, tol);
    if (dg < 0 && dh < 0) return {V, W};

    const int n = std::max({dg, (lambda == 0) ? dh - 1 : dh, 0});

    // Constraint list: (use g defect?, log level).
    std::vector<std::pair<bool, int>> constraints;
    if (lambda != 0) {
      constraints = {{true, n}, {false, n}};
    } else if (n >= 1) {
      constraints = {{true, n}, {false, n + 1}};
    } else {
      constraints = {{true, 0}, {false, 1}, {false, 0}};
    }

    const auto basis = make_ansatz(lambda, n);
    const std::size_t m = 2 * constraints.size();
    if (basis.size() != m) throw EngineError("ansatz size mismatch");

    std::vector<std::vector<double>> A(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
      const auto [use_g, level] = constraints[ci];
      const Complex target = -coeff_at(use_g ? d.g : d.h, level);
      rhs[2 * ci] = target.real();
      rhs[2 * ci + 1] = target.imag();
      for (std::size_t ei = 0; ei < basis.size(); ++ei) {
        Defects de = compute_defects(basis[ei].v, basis[ei].w, lambda, omega,
                                     Ray::PlusOmegaHalf);
        const TraceLogPolynomial& poly = use_g ? de.g : de.h;
        // nothing above the constraint level may be produced
        if (degree_above(poly, 1e-10) > ((lambda == 0 && !use_g) ? n + 1 : n))
          throw EngineError("correction basis exceeds congruence level");
        const Complex c = coeff_at(poly, level);
        A[2 * ci][ei] = c.real();
        A[2 * ci + 1][ei] = c.imag();
      }
    }
    const auto x = solve_dense(A, rhs);
    for (std::size_t ei = 0; ei < basis.size(); ++ei) {
      if (x[ei] == 0.0) continue;
      V += basis[ei].v * Complex(x[ei], 0.0);
      W += basis[ei].w * Complex(x[ei], 0.0);
    }
  }
  throw EngineError("interface recursion did not close");
}

}  // namespace

double SectorPair::max_abs_coeff() const {
  return std::max(minus.max_abs_coeff(), plus.max_abs_coeff());
}

int SectorPair::log_degree() const {
  return std::max(minus.log_degree(), plus.log_degree());
}

double ShadowChain::magnitude() const {
  double m = 0.0;
  for (const auto& p : pairs) m = std::max(m, p.max_abs_coeff());
  return m;
}

double TransmissionResiduals::max_abs() const {
  return std::max({g_plus.max_abs(), g_minus.max_abs(), h_plus.max_abs(),
                   h_minus.max_abs()});
}

TermSum pde_residual_minus(const SectorPair& pair, const TermSum& source) {
  return pair.minus.differentiate(Wrt::Var).differentiate(Wrt::ConjVar) - source;
}

TermSum pde_residual_plus(const SectorPair& pair) {
  return pair.plus.differentiate(Wrt::Var).differentiate(Wrt::ConjVar);
}

TransmissionResiduals transmission_residuals(const SectorPair& pair,
                                             double omega) {
  TransmissionResiduals res;
  for (Ray ray : {Ray::PlusOmegaHalf, Ray::MinusOmegaHalf}) {
    Defects d = compute_defects(pair.minus, pair.plus, pair.homogeneity, omega, ray);
    if (ray == Ray::PlusOmegaHalf) {
      res.g_plus = d.g;
      res.h_plus = d.h;
    } else {
      res.g_minus = d.g;
      res.h_minus = d.h;
    }
  }
  return res;
}

SectorPair first_shadow_of_power(int k, double omega) {
  validate_omega(omega);
  using TS = TermSum;
  const double so = std::sin(omega), co = std::cos(omega);
  if (k == -1) {
    TS v = TS::monomial(Sector::Minus, so / kPi, 1, 0, 1, 0) +
           TS::monomial(Sector::Minus, (omega - kPi) / kPi, 0, 1, 0, 1) +
           TS::monomial(Sector::Minus, -co, 1, 0) +
           TS::monomial(Sector::Minus, 1.0, 0, 1, 1, 0);
    TS w = TS::monomial(Sector::Plus, -so / kPi, 1, 0, 1, 0) +
           TS::monomial(Sector::Plus, -omega / kPi, 0, 1, 0, 1) +
           TS::monomial(Sector::Plus, 1.0, 0, 1);
    return {v, w, 1};
  }
  if (k == -2) {
    const double b = -(so + (2.0 * kPi - omega) * co) / kPi;
    const double bt = -(so + (kPi - omega) * co) / kPi;
    TS v = TS::monomial(Sector::Minus, so / (2.0 * kPi), 0, 0, 2, 0) +
           TS::monomial(Sector::Minus, so / (2.0 * kPi), 0, 0, 0, 2) +
           TS::monomial(Sector::Minus, b, 0, 0, 1, 0) +
           TS::monomial(Sector::Minus, -1.0, -1, 1);
    TS w = TS::monomial(Sector::Plus, so / (2.0 * kPi), 0, 0, 2, 0) +
           TS::monomial(Sector::Plus, so / (2.0 * kPi), 0, 0, 0, 2) +
           TS::monomial(Sector::Plus, bt, 0, 0, 1, 0) +
           TS::monomial(Sector::Plus, -co, 0, 0, 0, 1) +
           TS::monomial(Sector::Plus, -co + (kPi - omega) * so, 0, 0);
    return {v, w, 0};
  }
  const double a = so / (kPi * (k + 2));
  const double ap = std::sin((k + 1) * omega) / (kPi * (k + 1) * (k + 2));
  const double b = -co / (k + 2);
  const double bp = std::cos((k + 1) * omega) / double((k + 1) * (k + 2));
  const double sg = sector_sign(k);
  TS v = TS::monomial(Sector::Minus, a, k + 2, 0, 1, 0) +
         TS::monomial(Sector::Minus, ap, 0, k + 2, 0, 1) +
         TS::monomial(Sector::Minus, b, k + 2, 0) +
         TS::monomial(Sector::Minus, 1.0 / (k + 1), k + 1, 1);
  TS w = TS::monomial(Sector::Plus, sg * a, k + 2, 0, 1, 0) +
         TS::monomial(Sector::Plus, sg * ap, 0, k + 2, 0, 1) +
         TS::monomial(Sector::Plus, sg * bp, 0, k + 2);
  return {v, w, k + 2};
}

SectorPair first_shadow_of_log(double omega) {
  validate_omega(omega);
  using TS = TermSum;
  const double so = std::sin(omega), co = std::cos(omega);
  const Complex scale(-1.0 / (2.0 * kPi), 0.0);  // prop states -2*pi*pair
  TS v = TS::monomial(Sector::Minus, so / (4.0 * kPi), 2, 0, 2, 0) +
         TS::monomial(Sector::Minus, so / (4.0 * kPi), 0, 2, 0, 2) +
         TS::monomial(Sector::Minus, -(so + 2.0 * kPi * co) / (4.0 * kPi), 2, 0, 1, 0) +
         TS::monomial(Sector::Minus, -(3.0 * so + 2.0 * (kPi - omega) * co) / (4.0 * kPi), 0, 2, 0, 1) +
         TS::monomial(Sector::Minus, -0.25 * (kPi * so - co), 2, 0) +
         TS::monomial(Sector::Minus, 1.0, 1, 1, 1, 0) +
         TS::monomial(Sector::Minus, -1.0, 1, 1);
  TS w = TS::monomial(Sector::Plus, so / (4.0 * kPi), 2, 0, 2, 0) +
         TS::monomial(Sector::Plus, so / (4.0 * kPi), 0, 2, 0, 2) +
         TS::monomial(Sector::Plus, -so / (4.0 * kPi), 2, 0, 1, 0) +
         TS::monomial(Sector::Plus, -(3.0 * so - 2.0 * omega * co) / (4.0 * kPi), 0, 2, 0, 1) +
         TS::monomial(Sector::Plus, -0.25 * (3.0 * co + (2.0 * omega - kPi) * so), 0, 2);
  return {v * scale, w * scale, 2};
}

SectorPair next_shadow(const SectorPair& prev, ChainKind /*kind*/, double omega) {
  validate_omega(omega);
  const int lambda = prev.homogeneity + 2;
  if (prev.minus.empty())
    return SectorPair{TermSum(Sector::Minus), TermSum(Sector::Plus), lambda};
  if (prev.minus.homogeneity() != prev.homogeneity)
    throw EngineError("source homogeneity mismatch");

  auto [sre, sim] = prev.minus.split_coeff_real_imag();
  TermSum V(Sector::Minus), W(Sector::Plus);
  if (!sre.empty()) {
    auto [vr, wr] = solve_symmetric(sre, lambda, omega);
    V += vr;
    W += wr;
  }
  if (!sim.empty()) {
    auto [vi, wi] = solve_symmetric(sim, lambda, omega);
    V += vi * Complex(0.0, 1.0);
    W += wi * Complex(0.0, 1.0);
  }
  SectorPair out{V, W, lambda};

  const double scale = std::max({out.max_abs_coeff(), prev.max_abs_coeff(), 1e-300});
  const double tol = 1e-10 * scale;
  if (pde_residual_minus(out, prev.minus).max_abs_coeff() > tol ||
      pde_residual_plus(out).max_abs_coeff() > tol ||
      transmission_residuals(out, omega).max_abs() > tol) {
    std::ostringstream os;
    os << "shadow residual check failed at homogeneity " << lambda;
    throw EngineError(os.str());
  }
  return out;
}

ShadowChain build_chain(int k, ChainKind kind, int J, double omega) {
  validate_omega(omega);
  if (k < 0) throw std::invalid_argument("leading index k must be >= 0");
  if (J < 0) throw std::invalid_argument("negative chain depth");
  using TS = TermSum;
  ShadowChain chain{k, kind, omega, {}};
  SectorPair seed;
  if (kind == ChainKind::Primal) {
    seed = {TS::monomial(Sector::Minus, 1.0, k, 0),
            TS::monomial(Sector::Plus, sector_sign(k), k, 0), k};
  } else if (k == 0) {
    const double c = -1.0 / (2.0 * kPi);
    seed = {TS::monomial(Sector::Minus, c, 0, 0, 1, 0),
            TS::monomial(Sector::Plus, c, 0, 0, 1, 0), 0};
  } else {
    const double c = 1.0 / (2.0 * kPi * k);
    seed = {TS::monomial(Sector::Minus, c, -k, 0),
            TS::monomial(Sector::Plus, sector_sign(k) * c, -k, 0), -k};
  }
  chain.pairs.push_back(seed);
  for (int j = 1; j <= J; ++j)
    chain.pairs.push_back(next_shadow(chain.pairs.back(), kind, omega));
  return chain;
}

double real_part_eval(const SectorPair& pair, ChainKind kind, int p, double r,
                      double theta, double omega) {
  theta = wrap_angle(theta);
  const bool inside = std::abs(theta) <= omega / 2.0;
  const Complex v = inside ? pair.minus.evaluate(r, theta, omega)
                           : pair.plus.evaluate(r, theta, omega);
  if (p == 0) return v.real();
  return kind == ChainKind::Primal ? v.imag() : -v.imag();
}

ChainCheck verify_chain(const ShadowChain& chain) {
  ChainCheck out;
  const double mag = std::max(chain.magnitude(), 1e-300);
  for (std::size_t j = 1; j < chain.pairs.size(); ++j) {
    const SectorPair& pair = chain.pairs[j];
    out.pde_rel = std::max(
        out.pde_rel,
        pde_residual_minus(pair, chain.pairs[j - 1].minus).max_abs_coeff() / mag);
    out.pde_rel =
        std::max(out.pde_rel, pde_residual_plus(pair).max_abs_coeff() / mag);
    out.jump_rel = std::max(
        out.jump_rel, transmission_residuals(pair, chain.omega).max_abs() / mag);
  }
  for (std::size_t j = 0; j < chain.pairs.size(); ++j) {
    const int deg = chain.pairs[j].log_degree();
    int bound;
    if (chain.kind == ChainKind::Primal) {
      bound = static_cast<int>(j);
    } else {
      // one extra log power once the homogeneity -k+2j is nonnegative and
      // the chain is even; odd chains stay at degree j
      const bool extra = (chain.k % 2 == 0) && 2 * static_cast<int>(j) >= chain.k;
      bound = static_cast<int>(j) + (extra ? 1 : 0);
    }
    if (deg > bound) out.degree_bounds_ok = false;
  }
  if (chain.kind == ChainKind::Primal) {
    for (const auto& pair : chain.pairs)
      for (const TermSum* f : {&pair.minus, &pair.plus})
        for (const Term& t : f->terms())
          out.genform_imag_rel =
              std::max(out.genform_imag_rel, std::abs(t.coeff.imag()) / mag);
  }
  return out;
}

}  // namespace singex
