#pragma once

#include <memory>

#include "singex/shadow.hpp"

namespace singex {

/// Angular profiles of a chain at a fixed p: the real functions multiplying
/// r^homogeneity * log^n r in each shadow order j.  Piecewise closed forms
/// in theta; the seam |theta| = omega/2 evaluates the S- piece.  Built
/// profiles are verified to be C^1 across both seams.
class AngularTable {
 public:
  static AngularTable decompose(std::shared_ptr<const ShadowChain> chain, int p);

  /// Profile value; zero when j exceeds the depth or n exceeds the log
  /// degree of pair j.
  double value(int j, int n, double theta) const;
  double dtheta(int j, int n, double theta) const;

  int depth() const { return chain_->depth(); }
  int max_log(int j) const;
  const ShadowChain& chain() const { return *chain_; }
  int p() const { return p_; }

 private:
  AngularTable(std::shared_ptr<const ShadowChain> chain, int p)
      : chain_(std::move(chain)), p_(p) {}
  Complex profile(const TermSum& f, int n, double theta_var, bool deriv) const;
  double extract(Complex a) const;

  std::shared_ptr<const ShadowChain> chain_;
  int p_;
};

}  // namespace singex
