#pragma once

#include <memory>

#include "singex/shadow.hpp"

namespace singex {

/// Sector opening and operator strength; zeta in 1/m, all lengths in meters.
struct DomainConfig {
  double omega = kPi / 4.0;
  double zeta = 0.0;

  static DomainConfig from_physical(double omega, double kappa, double mu0,
                                    double sigma) {
    return {omega, std::sqrt(kappa * mu0 * sigma / 4.0)};
  }
};

/// A shadow chain bound to a truncation order m and a value of zeta,
/// evaluable as the truncated series sum_{j<=m} (i zeta^2)^j u_j with the
/// real part selection by p.  k=0, p=1 is rejected (that dual leading part
/// is not representable in the term algebra and is excluded throughout).
class SingularSeries {
 public:
  SingularSeries(std::shared_ptr<const ShadowChain> chain, int p, int m,
                 double zeta);

  Complex eval(double r, double theta) const;
  Complex eval_dr(double r, double theta) const;

  const ShadowChain& chain() const { return *chain_; }
  int p() const { return p_; }
  int m() const { return m_; }
  double zeta() const { return zeta_; }

 private:
  std::shared_ptr<const ShadowChain> chain_;
  std::vector<SectorPair> scaled_dr_;  // r * d/dr of each pair
  int p_;
  int m_;
  double zeta_;
};

/// Convenience: build the chain and bind it.
SingularSeries make_series(int k, ChainKind kind, int p, int m,
                           const DomainConfig& config);

}  // namespace singex
