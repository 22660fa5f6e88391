#include "singex/series.hpp"

#include <cmath>

namespace singex {

SingularSeries::SingularSeries(std::shared_ptr<const ShadowChain> chain, int p,
                               int m, double zeta)
    : chain_(std::move(chain)), p_(p), m_(m), zeta_(zeta) {
  if (p_ != 0 && p_ != 1) throw std::invalid_argument("p must be 0 or 1");
  if (chain_->k == 0 && p_ == 1)
    throw std::invalid_argument("k=0, p=1 is excluded (that branch is the angle)");
  if (m_ < 0 || m_ > chain_->depth())
    throw std::invalid_argument("truncation order exceeds chain depth");
  if (!(zeta_ >= 0.0)) throw std::invalid_argument("zeta must be nonnegative");
  scaled_dr_.reserve(chain_->pairs.size());
  for (const auto& pair : chain_->pairs)
    scaled_dr_.push_back(SectorPair{pair.minus.radial_scaling_derivative(),
                                    pair.plus.radial_scaling_derivative(),
                                    pair.homogeneity});
}

Complex SingularSeries::eval(double r, double theta) const {
  if (!(r > 0.0)) throw std::domain_error("eval requires r > 0");
  Complex acc(0, 0);
  const Complex iz2(0.0, zeta_ * zeta_);
  Complex w(1.0, 0.0);
  for (int j = 0; j <= m_; ++j) {
    acc += w * real_part_eval(chain_->pairs[static_cast<std::size_t>(j)],
                              chain_->kind, p_, r, theta, chain_->omega);
    w *= iz2;
  }
  return acc;
}

Complex SingularSeries::eval_dr(double r, double theta) const {
  if (!(r > 0.0)) throw std::domain_error("eval_dr requires r > 0");
  Complex acc(0, 0);
  const Complex iz2(0.0, zeta_ * zeta_);
  Complex w(1.0, 0.0);
  // r d/dr commutes with the real part selections
  for (int j = 0; j <= m_; ++j) {
    acc += w * real_part_eval(scaled_dr_[static_cast<std::size_t>(j)],
                              chain_->kind, p_, r, theta, chain_->omega);
    w *= iz2;
  }
  return acc / r;
}

SingularSeries make_series(int k, ChainKind kind, int p, int m,
                           const DomainConfig& config) {
  auto chain = std::make_shared<ShadowChain>(build_chain(k, kind, m, config.omega));
  return SingularSeries(std::move(chain), p, m, config.zeta);
}

}  // namespace singex
