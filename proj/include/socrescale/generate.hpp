#pragma once

#include "socrescale/cone.hpp"

#include <cstdint>
#include <random>

namespace socrescale {

using Rng = std::mt19937_64;

/// Interior sample per block: x_1 uniform in the unit ball, x_0 = |x_1| + u
/// with u uniform in (0, 1]. Half-line blocks get u alone.
VectorXd sample_interior(Rng& rng, const ConeStructure& cones);
VectorXd sample_interior_block(Rng& rng, BlockKind kind, Index d);

/// Uniform point in the unit ball of R^d.
VectorXd sample_unit_ball(Rng& rng, Index d);

/// Random structure with 1..max_blocks blocks, each a half-line (probability
/// halfline_prob) or a second-order cone of dim 2..max_dim.
ConeStructure random_structure(Rng& rng, Index max_blocks, Index max_dim,
                               double halfline_prob = 0.25);

struct PrimalFeasibleInstance {
  MatrixXd a;        // m x n, orthonormal rows, a * witness = 0
  VectorXd witness;  // |witness|_inf = 1, lambda_min(witness) >= 0.05
};

struct DualFeasibleInstance {
  MatrixXd a;        // m x n with -a' u = s
  VectorXd s;        // interior
  VectorXd u;
};

struct SocpInstance {
  MatrixXd a;
  VectorXd b;
  VectorXd c;
  VectorXd x;  // strictly feasible primal point
  VectorXd y;  // with s = c - a'y strictly feasible
  VectorXd s;
};

inline constexpr double kWitnessMargin = 0.05;

/// Requires 1 <= m < n.
PrimalFeasibleInstance gen_primal_feasible(std::uint64_t seed, Index m, const ConeStructure& cones);
/// Requires 1 <= m <= n.
DualFeasibleInstance gen_dual_feasible(std::uint64_t seed, Index m, const ConeStructure& cones);
/// Standard-form SOCP with interior primal and dual points; requires 1 <= m < n.
SocpInstance gen_socp(std::uint64_t seed, Index m, const ConeStructure& cones);

/// Harder instances: Ker(A) (primal) or Range(A') (dual) is spanned by the
/// witness and `decoys` random exterior directions with positive e-component,
/// so P_A e is typically outside the cone and the solver has to cut.
/// The witness has |.|_inf = 1 and lambda_min close to `margin` (0 puts it on
/// the boundary). m = dim - 1 - decoys (primal) or 1 + decoys (dual).
struct DecoyOptions {
  double margin = 0.01;
  Index decoys = 1;
  double strength = 5.0;  // how far outside the cone decoys reach
};

PrimalFeasibleInstance gen_primal_with_decoys(std::uint64_t seed, const ConeStructure& cones,
                                              const DecoyOptions& opts = {});
DualFeasibleInstance gen_dual_with_decoys(std::uint64_t seed, const ConeStructure& cones,
                                          const DecoyOptions& opts = {});

}  // namespace socrescale
