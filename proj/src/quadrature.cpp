#include "singex/quadrature.hpp"

#include <cmath>

namespace singex {

GaussLegendre GaussLegendre::compute(int n) {
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev start, Newton on P_n
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[static_cast<std::size_t>(i)] = -x;
    gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    gl.weights[static_cast<std::size_t>(i)] = w;
    gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return gl;
}

const GaussLegendre& GaussLegendre::order16() {
  static const GaussLegendre gl = compute(16);
  return gl;
}

namespace {

struct PassResult {
  Complex integral{0, 0};
  double abs_integral = 0.0;
};

PassResult integrate_pass(const std::function<Complex(double)>& f,
                          const std::vector<double>& breaks, int splits) {
  const auto& gl = GaussLegendre::order16();
  PassResult out;
  for (std::size_t arc = 0; arc + 1 < breaks.size(); ++arc) {
    const double len = (breaks[arc + 1] - breaks[arc]) / splits;
    for (int s = 0; s < splits; ++s) {
      const double lo = breaks[arc] + s * len;
      const double half = 0.5 * len;
      const double mid = lo + half;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const Complex v = f(mid + half * gl.nodes[i]);
        out.integral += gl.weights[i] * half * v;
        out.abs_integral += gl.weights[i] * half * std::abs(v);
      }
    }
  }
  return out;
}

}  // namespace

Complex integrate_circle(const std::function<Complex(double)>& f, double omega,
                         double rel_tol, int max_rounds) {
  const double h = omega / 2.0;
  const std::vector<double> breaks = {-kPi, -h, h, kPi};
  PassResult prev = integrate_pass(f, breaks, 4);
  for (int round = 1; round <= max_rounds; ++round) {
    PassResult cur = integrate_pass(f, breaks, 4 << round);
    const double scale = std::max(std::abs(cur.integral), cur.abs_integral);
    if (std::abs(cur.integral - prev.integral) <= rel_tol * std::max(scale, 1e-300))
      return cur.integral;
    prev = cur;
  }
  throw QuadratureError("panel doubling did not reach the requested agreement");
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > floor) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 4) return std::nan("");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace singex
