#pragma once

#include "socrescale/cone.hpp"
#include "socrescale/projector.hpp"

#include <optional>
#include <variant>

namespace socrescale {

struct BasicOptions {
  /// 0 selects the default cap ceil(8 n^3) + 8.
  Index max_iters = 0;
  /// |z| <= tol_zero * |y| counts as z = 0.
  double tol_zero = 1e-12;
  /// A step must raise 1/|z|^2 by at least 0.5 - progress_slack.
  double progress_slack = 1e-6;
  /// Minimum relative size of y - P y accepted as a dual certificate.
  double tol_dual = 1e-9;
};

Index default_bp_max_iters(Index num_blocks);

/// y with 2 sqrt(n) |P y| <= y_{k0}; k is the generating block.
struct CutVector {
  VectorXd y;
  Index k = 0;
};

/// z in Ker(A) with lambda_min(z) > 0.
struct PrimalInterior {
  VectorXd z;
};

/// Nonzero y in K with P y = 0, so y = -A'u for some u.
struct DualNonzero {
  VectorXd y;
};

struct BasicOutcome {
  std::variant<CutVector, PrimalInterior, DualNonzero> result;
  Index iterations = 0;
  /// 1/|z|^2 at the final iterate.
  double inv_norm_sq = 0.0;
  /// Smallest observed increase of 1/|z|^2 over all steps (+inf if no step ran).
  double min_progress = 0.0;

  bool is_cut() const { return std::holds_alternative<CutVector>(result); }
  bool is_primal() const { return std::holds_alternative<PrimalInterior>(result); }
  bool is_dual() const { return std::holds_alternative<DualNonzero>(result); }
};

/// Smallest block k with 2 sqrt(n) |z| <= y_{k0}, if any.
std::optional<Index> cut_index(const ConeStructure& cones, const ConstBlockRef& z,
                               const ConstBlockRef& y);

/// eta_i in K_i with eta_{i0} = 1 and eta_i' z_i <= 0 for a nonzero,
/// non-interior block z_i. Throws NotApplicable otherwise.
VectorXd build_eta(BlockKind kind, const ConstBlockRef& z_i);

struct StepResult {
  VectorXd y;
  VectorXd z;
  double alpha = 0.0;
};

/// Moves to the point on the segment [p, z] closest to the origin and takes
/// the same convex combination of y and eta.
StepResult basic_step(const ConstBlockRef& y, const ConstBlockRef& z, const ConstBlockRef& eta,
                      const ConstBlockRef& p);

/// Runs the basic procedure from y_in (e'y_in = 1, y_in interior).
BasicOutcome run_basic_procedure(const Projector& projector, const ConeStructure& cones,
                                 const ConstBlockRef& y_in, const BasicOptions& opts = {});

}  // namespace socrescale
