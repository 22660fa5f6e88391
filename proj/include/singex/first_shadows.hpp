#pragma once

#include "singex/shadow.hpp"

namespace singex {

// Real-form first shadows, transcribed independently of the recursive
// engine.  Used as golden references in tests and by the CLI verify path.
// theta is wrapped to (-pi, pi]; the two sector pieces are selected by
// |theta| against omega/2 (the seam uses the S- piece).

/// First even shadow of r^k cos(k theta): s^{k,0}_1.  Valid for any integer
/// k with k != -1, -2.
double primal_even_first_shadow(int k, double omega, double r, double theta);

/// First odd shadow of r^k sin(k theta): s^{k,1}_1, k != -1, -2.
double primal_odd_first_shadow(int k, double omega, double r, double theta);

/// Dual first shadows kk^{k,p}_1 for k = 0, 1, 2 (the special cases) and
/// k >= 3 (scaled primal forms at -k).
double dual_first_shadow(int k, int p, double omega, double r, double theta);

}  // namespace singex
