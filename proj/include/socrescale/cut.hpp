#pragma once

#include "socrescale/cone.hpp"
#include "socrescale/tsoc.hpp"

namespace socrescale {

/// Threshold on eta = |y_k1| / y_k0 between the two second-order cut shapes.
inline constexpr double kCutCaseThreshold = 0.6;
/// Guaranteed per-dimension volume shrink of every cut.
inline constexpr double kCutShrink = 0.96;

enum class CutCase { HalfLine, One, Two };

const char* to_string(CutCase c);

/// Region known to contain block k of every feasible point after a cut:
/// [0, 1/sqrt(2)] for a half-line, C(w, v) for a second-order block.
struct Cut {
  Index k = 0;
  CutCase kind = CutCase::HalfLine;
  HalfSpace halfspace;          // empty for half-line cuts
  double eta = 0.0;             // |y_k1| / y_k0, 0 for half-lines
  double volume_factor = 0.0;   // vol(C(w, v)) / V_d, or 1/sqrt(2) for half-lines

  /// Automorphism of K_k mapping C(e_k, e_k) onto the cut region.
  BlockAutomorphism automorphism() const;
};

/// Builds the cut for generating block y_k (y_k in K_k, y_k0 > 0).
Cut build_cut(Index k, BlockKind kind, const ConstBlockRef& y_k);

/// Volume bound for the shrink-only cut, w = y_k, v = e_k / sqrt(2); eta < 1.
double g1(double eta, Index d);
/// Volume bound for the supporting-hyperplane cut; eta > sqrt(1 - 1/sqrt(2)).
double g2(double eta, Index d);

}  // namespace socrescale
