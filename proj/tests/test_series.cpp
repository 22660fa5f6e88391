#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "singex/angular.hpp"
#include "singex/series.hpp"

using namespace singex;

TEST_CASE("leading terms: S and K at m = 0") {
  DomainConfig cfg{kPi / 4.0, 0.7};
  auto s00 = make_series(0, ChainKind::Primal, 0, 0, cfg);
  auto s11 = make_series(1, ChainKind::Primal, 1, 0, cfg);
  auto s10 = make_series(1, ChainKind::Primal, 0, 0, cfg);
  auto k00 = make_series(0, ChainKind::Dual, 0, 0, cfg);
  auto k10 = make_series(1, ChainKind::Dual, 0, 0, cfg);
  for (double th : {0.0, 0.3, 2.0, -2.9}) {
    CHECK(std::abs(s00.eval(0.5, th) - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(s11.eval(0.5, th) - Complex(0.5 * std::sin(th), 0)) < 1e-14);
    CHECK(std::abs(k00.eval(0.5, th) - Complex(-std::log(0.5) / (2 * kPi), 0)) < 1e-14);
    CHECK(std::abs(s10.eval_dr(0.7, th) - Complex(std::cos(th), 0)) < 1e-13);
    CHECK(std::abs(k10.eval_dr(0.7, th) -
                   Complex(-std::cos(th) / (2 * kPi * 0.7 * 0.7), 0)) < 1e-13);
  }
}

TEST_CASE("radial derivative agrees with centered differences") {
  DomainConfig cfg{kPi / 4.0, 1.0};
  auto s = make_series(0, ChainKind::Primal, 0, 1, cfg);
  const double r = 0.3, th = 0.2, h = 1e-5;
  const Complex fd = (s.eval(r + h, th) - s.eval(r - h, th)) / (2.0 * h);
  CHECK(std::abs(s.eval_dr(r, th) - fd) < 1e-7);

  auto kk = make_series(2, ChainKind::Dual, 0, 2, cfg);
  const Complex fd2 = (kk.eval(r + h, th) - kk.eval(r - h, th)) / (2.0 * h);
  CHECK(std::abs(kk.eval_dr(r, th) - fd2) < 1e-6 * std::abs(fd2));
}

TEST_CASE("zeta = 0 collapses every truncation to the leading part") {
  DomainConfig cfg{1.0, 0.0};
  auto s = make_series(2, ChainKind::Primal, 0, 3, cfg);
  auto k = make_series(2, ChainKind::Dual, 0, 3, cfg);
  for (double th : {0.1, 1.8}) {
    CHECK(std::abs(s.eval(0.4, th) - Complex(0.16 * std::cos(2 * th), 0)) < 1e-14);
    CHECK(std::abs(k.eval(0.4, th) -
                   Complex(std::cos(2 * th) / (4.0 * kPi * 0.16), 0)) < 1e-12);
  }
}

TEST_CASE("operator residual of the truncated series is the last shadow") {
  // -4 dz dzbar (sum (i z^2)^j u_j) + 4 i z^2 (sum ...) = 4 i z^2 (i z^2)^m u_m
  // on S-; identically zero on S+.
  const double omega = kPi / 4.0;
  const Complex iz2(0.0, 1.3);
  for (ChainKind kind : {ChainKind::Primal, ChainKind::Dual}) {
    for (int k : {0, 1, 3}) {
      auto chain = build_chain(k, kind, 3, omega);
      const int m = 3;
      TermSum acc_minus(Sector::Minus), acc_plus(Sector::Plus);
      Complex w(1, 0);
      for (int j = 0; j <= m; ++j) {
        acc_minus += chain.pairs[j].minus * w;
        acc_plus += chain.pairs[j].plus * w;
        w *= iz2;
      }
      TermSum res_minus =
          acc_minus.differentiate(Wrt::Var).differentiate(Wrt::ConjVar) * Complex(-4.0, 0) +
          acc_minus * (4.0 * iz2);
      TermSum want = chain.pairs[m].minus * (4.0 * iz2 * std::pow(iz2, m));
      const double scale = std::max(want.max_abs_coeff(), 1e-30);
      CHECK(max_coeff_difference(res_minus, want) / scale < 1e-12);
      TermSum res_plus =
          acc_plus.differentiate(Wrt::Var).differentiate(Wrt::ConjVar);
      CHECK(res_plus.max_abs_coeff() < 1e-12 * scale);
    }
  }
}

TEST_CASE("angular profiles: published closed forms at omega = pi/4") {
  const double omega = kPi / 4.0;
  auto c0 = std::make_shared<ShadowChain>(build_chain(0, ChainKind::Primal, 1, omega));
  auto phi = AngularTable::decompose(c0, 0);
  for (double th : {0.05, -0.3, 1.0, 2.4, -3.0}) {
    CHECK(phi.value(1, 1, th) ==
          doctest::Approx((std::sin(omega) / kPi) * std::cos(2 * th)).epsilon(1e-12));
    if (std::abs(th) <= omega / 2) {
      const double want = 1.0 - 0.5 * std::cos(omega) * std::cos(2 * th) -
                          (std::sin(omega) / kPi) * th * std::sin(2 * th);
      CHECK(phi.value(1, 0, th) == doctest::Approx(want).epsilon(1e-12));
    } else {
      const double want = 0.5 * std::cos(omega) * std::cos(2 * th) -
                          (std::sin(omega) / kPi) * theta_plus(th) * std::sin(2 * th);
      CHECK(phi.value(1, 0, th) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(phi.value(0, 0, th) == doctest::Approx(1.0).epsilon(1e-14));
  }
  auto c2 = std::make_shared<ShadowChain>(build_chain(2, ChainKind::Dual, 1, omega));
  auto psi = AngularTable::decompose(c2, 0);
  for (double th : {0.05, 1.0, -2.0}) {
    CHECK(psi.value(0, 0, th) ==
          doctest::Approx(std::cos(2 * th) / (4.0 * kPi)).epsilon(1e-12));
    const double want =
        -(std::sin(omega) + (2.0 * kPi - omega) * std::cos(omega)) / (4.0 * kPi * kPi);
    CHECK(psi.value(1, 1, th) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("angular table reassembles the series") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uth(-kPi, kPi), ur(0.05, 2.0);
  DomainConfig cfg{1.1, 0.9};
  for (ChainKind kind : {ChainKind::Primal, ChainKind::Dual}) {
    for (int k : {0, 2, 3}) {
      for (int p : {0, 1}) {
        if (k == 0 && p == 1) continue;
        auto chain = std::make_shared<ShadowChain>(build_chain(k, kind, 3, cfg.omega));
        auto table = AngularTable::decompose(chain, p);
        SingularSeries series(chain, p, 3, cfg.zeta);
        const Complex iz2(0.0, cfg.zeta * cfg.zeta);
        for (int it = 0; it < 100; ++it) {
          const double r = ur(rng), th = uth(rng);
          Complex rebuilt(0, 0);
          Complex w(1, 0);
          for (int j = 0; j <= 3; ++j) {
            const double rp = std::pow(r, chain->pairs[j].homogeneity);
            for (int n = 0; n <= table.max_log(j); ++n)
              rebuilt += w * rp * std::pow(std::log(r), n) * table.value(j, n, th);
            w *= iz2;
          }
          const Complex direct = series.eval(r, th);
          CHECK(std::abs(rebuilt - direct) <=
                1e-11 * std::max(1.0, std::abs(direct)));
        }
      }
    }
  }
}

TEST_CASE("k=0, p=1 is rejected") {
  DomainConfig cfg{1.0, 0.5};
  CHECK_THROWS_AS(make_series(0, ChainKind::Dual, 1, 1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(make_series(0, ChainKind::Primal, 1, 1, cfg), std::invalid_argument);
}

TEST_CASE("eval rejects r <= 0") {
  DomainConfig cfg{1.0, 0.5};
  auto s = make_series(1, ChainKind::Primal, 0, 1, cfg);
  CHECK_THROWS_AS(s.eval(0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(s.eval(-1.0, 0.1), std::domain_error);
}
