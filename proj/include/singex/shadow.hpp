#pragma once

#include <vector>

#include "singex/term_algebra.hpp"

namespace singex {

enum class ChainKind : std::uint8_t { Primal, Dual };

/// A pair of term sums of one homogeneity degree, one per sector.  The atom
/// of all singular functions: shadow j of a chain satisfies
///   dz dzbar minus = previous.minus   in S-,
///   dz+ dzbar+ plus = 0               in S+,
/// with vanishing transmission jumps across both interface rays.
struct SectorPair {
  TermSum minus{Sector::Minus};
  TermSum plus{Sector::Plus};
  int homogeneity = 0;

  double max_abs_coeff() const;
  int log_degree() const;
};

/// The ordered shadows [u_0, u_1, ..., u_J] of one leading singularity.
struct ShadowChain {
  int k = 0;
  ChainKind kind = ChainKind::Primal;
  double omega = 0.0;
  std::vector<SectorPair> pairs;

  int depth() const { return static_cast<int>(pairs.size()) - 1; }
  double magnitude() const;  // largest |coeff| across all pairs
};

/// Transmission-jump traces of a pair on both rays.  For homogeneity != 0
/// these are the dz- and dzbar-jumps; for homogeneity 0 the angular
/// derivative jump and the Dirichlet jump.
struct TransmissionResiduals {
  TraceLogPolynomial g_plus, g_minus;  // first jump, rays +omega/2, -omega/2
  TraceLogPolynomial h_plus, h_minus;  // second jump
  double max_abs() const;
};

TermSum pde_residual_minus(const SectorPair& pair, const TermSum& source);
TermSum pde_residual_plus(const SectorPair& pair);
TransmissionResiduals transmission_residuals(const SectorPair& pair, double omega);

/// Closed-form first shadow generated by z^k (particular solutions of the
/// interface problem with source z^k).  k != -1, -2 is the generic case;
/// k = -1 and k = -2 have their own forms.
SectorPair first_shadow_of_power(int k, double omega);

/// Closed-form first dual shadow generated by -log(z)/(2 pi); homogeneity 2.
SectorPair first_shadow_of_log(double omega);

/// Builds the shadow of order lambda_prev + 2 from the previous one by the
/// level-by-level interface recursion.  The representative is pinned by the
/// construction: exact interior primitive plus the minimal log-power
/// correction basis, no extra jump-free homogeneous component.
SectorPair next_shadow(const SectorPair& prev, ChainKind kind, double omega);

/// Seeds a chain (z^k primal; z^-k/(2 k pi) or -log(z)/(2 pi) dual) and
/// applies next_shadow J times.
ShadowChain build_chain(int k, ChainKind kind, int J, double omega);

/// Real part extraction of a chain pair at a point: primal p=0 -> Re,
/// p=1 -> Im; dual p=0 -> Re, p=1 -> -Im.  The seam |theta| = omega/2
/// evaluates the S- piece.
double real_part_eval(const SectorPair& pair, ChainKind kind, int p, double r,
                      double theta, double omega);

/// Worst PDE / transmission residual of a chain, relative to its magnitude.
struct ChainCheck {
  double pde_rel = 0.0;
  double jump_rel = 0.0;
  bool degree_bounds_ok = true;
  double genform_imag_rel = 0.0;  // largest |Im coeff| / magnitude (primal)
};
ChainCheck verify_chain(const ShadowChain& chain);

}  // namespace singex
