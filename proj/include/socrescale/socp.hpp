#pragma once

#include "socrescale/cone.hpp"
#include "socrescale/solver.hpp"

namespace socrescale {

/// min c'x s.t. Ax = b, x in K, with dual max b'y s.t. c - A'y = s in K.
struct StandardSocp {
  MatrixXd a;
  VectorXd b;
  VectorXd c;
  ConeStructure cones;

  /// Throws InvalidArgument on inconsistent dimensions.
  void validate() const;
};

/// A x - b tau = 0 over K x R_+.
struct HomogeneousInstance {
  MatrixXd a;
  ConeStructure cones;  // original blocks followed by one half-line for tau
};

HomogeneousInstance homogenize_feasibility(const MatrixXd& a, const VectorXd& b,
                                           const ConeStructure& cones);

/// x = x_hat / tau for a solution (x_hat; tau) of the homogeneous system.
VectorXd recover_from_homogeneous(const VectorXd& x_hat_tau);

struct PhaseResult {
  int phase = 1;
  double t = 0.5;            // Phase II parameter, 0.5 for Phase I
  VectorXd x;
  VectorXd y;
  VectorXd s;
  double gap = 0.0;          // c'x - b'y
  double eps_hat = 0.0;      // min(lambda_min(x), lambda_min(s), 1)
  double m = 0.0;            // gap at the Phase I point
  double cond_bound = 0.0;   // lambda_max / lambda_min of (x; s; 1)
  double primal_residual = 0.0;  // |Ax - b|_inf / (1 + |b|_inf)
  double dual_residual = 0.0;    // |s - c + A'y|_inf / (1 + |c|_inf)
  SolverStats stats;
};

struct SocpOptions {
  /// epsilon is ignored; both phases run with epsilon = 0.
  SolverOptions solver;
};

/// Interior x, s with Ax = b and c - s in Range(A'), from the homogenized
/// system [A 0 -b; 0 N' -N'c] over K x K x R_+ (N an orthonormal basis of
/// Ker(A)). Throws AssumptionViolated if the solver reports infeasibility.
PhaseResult phase1(const StandardSocp& p, const SocpOptions& opts = {});

/// Adds 0 <= gap <= 2 t M to the Phase I system through two half-line
/// slacks. Requires 0 < t <= 1/2. Returns phase1 unchanged when M <= 0.
PhaseResult phase2(const StandardSocp& p, const PhaseResult& p1, double t,
                   const SocpOptions& opts = {});

/// Phase I, then Phase II with t = min(1/2, delta / (2M)) unless the Phase I
/// gap is already <= delta (always the case for delta = inf).
PhaseResult solve_to_gap(const StandardSocp& p, double delta, const SocpOptions& opts = {});

/// lambda_max((x; 1)) / lambda_min((x; 1)), with the 1 as an extra half-line.
double cond_upper_bound(const ConeStructure& cones, const VectorXd& x);

}  // namespace socrescale
