#pragma once

#include "socrescale/basic_procedure.hpp"
#include "socrescale/cone.hpp"
#include "socrescale/cut.hpp"
#include "socrescale/projector.hpp"
#include "socrescale/tsoc.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace socrescale {

/// Scaled problem A_t = A M with block-diagonal M = diag(M_1, ..., M_n) and
/// the determinant ledger v_k = det(M_k).
class SolverState {
 public:
  SolverState(MatrixXd a, ConeStructure cones);

  const ConeStructure& cones() const { return cones_; }
  const MatrixXd& original() const { return original_; }
  const MatrixXd& scaled() const { return scaled_; }
  const MatrixXd& block_scaling(Index k) const { return m_[static_cast<std::size_t>(k)]; }
  double ledger(Index k) const { return v_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& ledger() const { return v_; }
  const std::vector<Index>& cuts_per_block() const { return cuts_; }
  Index outer_iterations() const { return t_; }

  /// A_k <- A_k G, M_k <- M_k G, v_k <- det(G) v_k. Other blocks are untouched.
  void rescale(Index k, const BlockAutomorphism& g);

  /// M^{-1} x, blockwise.
  VectorXd pullback(const VectorXd& x) const;

 private:
  ConeStructure cones_;
  MatrixXd original_;
  MatrixXd scaled_;
  std::vector<MatrixXd> m_;
  std::vector<double> v_;
  std::vector<Index> cuts_;
  Index t_ = 0;
};

void apply_rescale(SolverState& state, const Cut& cut);

/// First block k with v_k <= eps^{d_k}; never triggers for eps = 0.
std::optional<Index> no_eps_check(const SolverState& state, double epsilon);

/// x = M x_tilde.
VectorXd map_primal(const SolverState& state, const VectorXd& x_tilde);

struct DualCertificate {
  VectorXd s;
  VectorXd u;
};

/// s = M^{-T} y_tilde (per-block solves) and u from the least-squares fit
/// s = -A'u on the original A, given that A's projector.
DualCertificate map_dual(const SolverState& state, const Projector& original,
                         const VectorXd& y_tilde);

struct SolverStats {
  Index outer_iterations = 0;  // cuts applied
  Index bp_calls = 0;
  Index bp_iterations = 0;
  Index max_bp_iterations = 0;
  double min_progress = 0.0;   // +inf when no step was taken
  std::vector<Index> cuts_per_block;
  std::vector<double> ledger;
};

/// Passed to SolverOptions::on_cut before the rescale is applied.
struct CutEvent {
  Index outer = 0;
  const VectorXd& y;
  const Cut& cut;
  const BlockAutomorphism& g;
  const SolverState& state;
};

struct SolverOptions {
  double epsilon = 1e-6;
  /// Cap on basic procedure calls; with epsilon > 0 the theoretical cap
  /// n ceil(ln eps / ln 0.96) + n applies when smaller.
  Index max_outer = 1'000'000;
  BasicOptions bp;
  double rank_tol = Projector::kDefaultRankTol;
  Projector::Strategy projector_strategy = Projector::Strategy::Auto;
  /// Tolerance for re-verifying certificates in original coordinates.
  double verify_tol = 1e-8;
  std::function<void(const CutEvent&)> on_cut;
};

Index outer_cap(Index num_blocks, double epsilon, Index max_outer);

struct PrimalResult {
  VectorXd x;               // normalized to |x|_inf = 1
  double residual = 0.0;    // |Ax|_inf / (|A|_inf |x|_inf)
  double lambda_min = 0.0;
};

struct DualResult {
  VectorXd s;               // normalized to |s|_inf = 1
  VectorXd u;
  double residual = 0.0;
  double lambda_min = 0.0;
};

struct NoEpsInterior {
  Index k = 0;
  double v_k = 0.0;
};

enum class SolveStatus { PrimalInterior, DualNonzero, NoEpsInterior };

const char* to_string(SolveStatus s);

struct SolveResult {
  std::variant<PrimalResult, DualResult, NoEpsInterior> outcome;
  SolverStats stats;

  SolveStatus status() const { return static_cast<SolveStatus>(outcome.index()); }
};

/// Finds x with Ax = 0, x interior; or s = -A'u in K, s != 0; or declares
/// that no x with Ax = 0, |x|_inf <= 1, lambda_min(x) >= eps exists.
SolveResult solve(const MatrixXd& a, const ConeStructure& cones, const SolverOptions& opts = {});

}  // namespace socrescale
