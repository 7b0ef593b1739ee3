#include "socrescale/solver.hpp"

#include "socrescale/error.hpp"
#include "socrescale/verify.hpp"

#include <spdlog/spdlog.h>

#include <Eigen/LU>

#include <cmath>
#include <limits>

namespace socrescale {

SolverState::SolverState(MatrixXd a, ConeStructure cones)
    : cones_(std::move(cones)), original_(std::move(a)) {
  if (original_.cols() != cones_.dim()) {
    throw Error(ErrorCode::InvalidArgument,
                "A has " + std::to_string(original_.cols()) + " columns but the cone has dim " +
                    std::to_string(cones_.dim()));
  }
  scaled_ = original_;
  const auto n = static_cast<std::size_t>(cones_.num_blocks());
  m_.reserve(n);
  for (Index k = 0; k < cones_.num_blocks(); ++k) {
    m_.push_back(MatrixXd::Identity(cones_.block_dim(k), cones_.block_dim(k)));
  }
  v_.assign(n, 1.0);
  cuts_.assign(n, 0);
}

void SolverState::rescale(Index k, const BlockAutomorphism& g) {
  const Index off = cones_.offset(k);
  const Index d = cones_.block_dim(k);
  if (g.dim() != d) {
    throw Error(ErrorCode::InvalidArgument, "automorphism size does not match block " +
                                                std::to_string(k));
  }
  auto sk = static_cast<std::size_t>(k);
  scaled_.middleCols(off, d) = (scaled_.middleCols(off, d) * g.matrix()).eval();
  m_[sk] = (m_[sk] * g.matrix()).eval();
  v_[sk] *= g.det();
  ++cuts_[sk];
  ++t_;
}

VectorXd SolverState::pullback(const VectorXd& x) const {
  VectorXd out(x.size());
  for (Index k = 0; k < cones_.num_blocks(); ++k) {
    cones_.segment(out, k) = block_scaling(k).partialPivLu().solve(cones_.segment(x, k));
  }
  return out;
}

void apply_rescale(SolverState& state, const Cut& cut) {
  state.rescale(cut.k, cut.automorphism());
}

std::optional<Index> no_eps_check(const SolverState& state, double epsilon) {
  if (!(epsilon > 0.0)) return std::nullopt;
  const ConeStructure& cones = state.cones();
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    if (state.ledger(k) <= std::pow(epsilon, static_cast<double>(cones.block_dim(k)))) return k;
  }
  return std::nullopt;
}

VectorXd map_primal(const SolverState& state, const VectorXd& x_tilde) {
  const ConeStructure& cones = state.cones();
  VectorXd x(x_tilde.size());
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    cones.segment(x, k) = state.block_scaling(k) * cones.segment(x_tilde, k);
  }
  return x;
}

DualCertificate map_dual(const SolverState& state, const Projector& original,
                         const VectorXd& y_tilde) {
  const ConeStructure& cones = state.cones();
  DualCertificate out;
  out.s.resize(y_tilde.size());
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    Eigen::PartialPivLU<MatrixXd> lu(state.block_scaling(k).transpose());
    if (!(std::abs(lu.determinant()) > 0.0)) {
      throw Error(ErrorCode::NumericalBreakdown,
                  "block scaling " + std::to_string(k) + " is singular");
    }
    cones.segment(out.s, k) = lu.solve(cones.segment(y_tilde, k));
  }
  out.u = -original.row_space_coefficients(out.s);
  return out;
}

Index outer_cap(Index num_blocks, double epsilon, Index max_outer) {
  if (!(epsilon > 0.0)) return max_outer;
  const double per_block =
      std::max(0.0, std::ceil(std::log(epsilon) / std::log(kCutShrink)));
  const double cap = static_cast<double>(num_blocks) * (per_block + 1.0);
  if (cap >= static_cast<double>(max_outer)) return max_outer;
  return static_cast<Index>(cap);
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::PrimalInterior: return "primal_interior";
    case SolveStatus::DualNonzero: return "dual_nonzero";
    case SolveStatus::NoEpsInterior: return "no_eps_interior";
  }
  return "unknown";
}

namespace {

// Row scaling leaves Ker(A) unchanged.
VectorXd row_scales(const MatrixXd& a) {
  VectorXd d(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    const double nrm = a.row(i).norm();
    d(i) = nrm > 0.0 ? 1.0 / nrm : 1.0;
  }
  return d;
}

PrimalResult finish_primal(const SolverState& state, const Projector& original,
                           const VectorXd& z, double tol) {
  const ConeStructure& cones = state.cones();
  VectorXd x = map_primal(state, z);
  // One projection in original coordinates removes the drift that M amplifies.
  VectorXd polished = original.apply(x);
  if (lambda_min(cones, polished) > 0.0) x = std::move(polished);
  const double xn = inf_norm(x);
  if (xn > 0.0) x /= xn;

  VerifyReport rep = verify_primal(state.original(), cones, x, tol);
  if (!rep.ok) {
    throw Error(ErrorCode::NumericalBreakdown,
                "primal certificate failed verification: " + rep.messages.front());
  }
  return {std::move(x), rep.residual, rep.lambda_min};
}

DualResult finish_dual(const SolverState& state, const Projector& original,
                       const VectorXd& original_row_scales, const VectorXd& y, double tol) {
  DualCertificate cert = map_dual(state, original, y);
  // original was built from D A, so -A'(D u_hat) = -(DA)'u_hat.
  cert.u = original_row_scales.cwiseProduct(cert.u);
  const double sn = inf_norm(cert.s);
  if (sn > 0.0) {
    cert.s /= sn;
    cert.u /= sn;
  }
  VerifyReport rep = verify_dual(state.original(), state.cones(), cert.s, cert.u, tol);
  if (!rep.ok) {
    throw Error(ErrorCode::NumericalBreakdown,
                "dual certificate failed verification: " + rep.messages.front());
  }
  return {std::move(cert.s), std::move(cert.u), rep.residual, rep.lambda_min};
}

}  // namespace

SolveResult solve(const MatrixXd& a, const ConeStructure& cones, const SolverOptions& opts) {
  if (!(opts.epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be >= 0");
  if (cones.num_blocks() == 0) throw Error(ErrorCode::InvalidArgument, "empty cone");

  SolverState state(a, cones);
  const VectorXd scales = row_scales(a);
  const Projector original =
      Projector::build(scales.asDiagonal() * a, opts.rank_tol, opts.projector_strategy);

  const Index n = cones.num_blocks();
  const Index cap = outer_cap(n, opts.epsilon, opts.max_outer);
  const VectorXd y_in = identity(cones) / static_cast<double>(n);

  SolveResult result;
  SolverStats& stats = result.stats;
  stats.min_progress = std::numeric_limits<double>::infinity();
  auto snapshot = [&]() {
    stats.outer_iterations = state.outer_iterations();
    stats.cuts_per_block = state.cuts_per_block();
    stats.ledger = state.ledger();
  };

  // Orthonormal rows spanning Range((A M)'). Only Ker(A M) matters to the
  // basic procedure, and refreshing this basis after every cut keeps its
  // conditioning bounded by that of a single cut automorphism.
  MatrixXd work = original.row_space_basis().transpose();

  for (;;) {
    if (stats.bp_calls >= cap) {
      throw Error(ErrorCode::OuterCapExceeded,
                  "main loop exceeded " + std::to_string(cap) + " basic procedure calls");
    }
    const Projector projector = Projector::build(work, opts.rank_tol, opts.projector_strategy);
    BasicOutcome bp = run_basic_procedure(projector, cones, y_in, opts.bp);
    ++stats.bp_calls;
    stats.bp_iterations += bp.iterations;
    stats.max_bp_iterations = std::max(stats.max_bp_iterations, bp.iterations);
    stats.min_progress = std::min(stats.min_progress, bp.min_progress);

    if (auto* p = std::get_if<PrimalInterior>(&bp.result)) {
      spdlog::debug("bp call {}: primal interior after {} iterations", stats.bp_calls,
                    bp.iterations);
      result.outcome = finish_primal(state, original, p->z, opts.verify_tol);
      snapshot();
      return result;
    }
    if (auto* d = std::get_if<DualNonzero>(&bp.result)) {
      spdlog::debug("bp call {}: dual nonzero after {} iterations", stats.bp_calls,
                    bp.iterations);
      result.outcome = finish_dual(state, original, scales, d->y, opts.verify_tol);
      snapshot();
      return result;
    }

    const auto& cv = std::get<CutVector>(bp.result);
    const Cut cut = build_cut(cv.k, cones.block(cv.k).kind, cones.segment(cv.y, cv.k));
    const BlockAutomorphism g = cut.automorphism();
    if (opts.on_cut) opts.on_cut(CutEvent{state.outer_iterations(), cv.y, cut, g, state});
    state.rescale(cut.k, g);
    work = projector.row_space_basis().transpose();
    const Index off = cones.offset(cut.k);
    work.middleCols(off, g.dim()) = (work.middleCols(off, g.dim()) * g.matrix()).eval();
    spdlog::debug("bp call {}: cut on block {} ({}, eta {:.4f}, factor {:.4f}), v_k = {:.3e}",
                  stats.bp_calls, cut.k, to_string(cut.kind), cut.eta, cut.volume_factor,
                  state.ledger(cut.k));

    if (auto k = no_eps_check(state, opts.epsilon)) {
      result.outcome = NoEpsInterior{*k, state.ledger(*k)};
      snapshot();
      return result;
    }
  }
}

}  // namespace socrescale
