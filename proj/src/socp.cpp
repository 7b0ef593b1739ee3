#include "socrescale/socp.hpp"

#include "socrescale/error.hpp"
#include "socrescale/projector.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <limits>

namespace socrescale {

void StandardSocp::validate() const {
  const Index n = cones.dim();
  if (a.cols() != n || b.size() != a.rows() || c.size() != n) {
    throw Error(ErrorCode::InvalidArgument,
                "SOCP dimensions disagree: A is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + ", b has " + std::to_string(b.size()) +
                    ", c has " + std::to_string(c.size()) + ", cone dim " + std::to_string(n));
  }
  if (a.rows() == 0) throw Error(ErrorCode::InvalidArgument, "SOCP needs at least one row");
}

HomogeneousInstance homogenize_feasibility(const MatrixXd& a, const VectorXd& b,
                                           const ConeStructure& cones) {
  if (a.cols() != cones.dim() || b.size() != a.rows()) {
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch in homogenize_feasibility");
  }
  HomogeneousInstance h;
  h.a.resize(a.rows(), a.cols() + 1);
  h.a << a, -b;
  h.cones = cones.concat(ConeStructure({Block::half_line()}));
  return h;
}

VectorXd recover_from_homogeneous(const VectorXd& x_hat_tau) {
  const Index n = x_hat_tau.size() - 1;
  const double tau = x_hat_tau(n);
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::NumericalBreakdown, "homogeneous solution has tau <= 0");
  }
  return x_hat_tau.head(n) / tau;
}

double cond_upper_bound(const ConeStructure& cones, const VectorXd& x) {
  const double lo = std::min(lambda_min(cones, x), 1.0);
  const double hi = std::max(lambda_max(cones, x), 1.0);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

namespace {

struct HomogeneousSolve {
  VectorXd point;  // divided by tau, tau itself dropped
  SolverStats stats;
  double cond_bound = 0.0;
};

HomogeneousSolve solve_homogeneous(const MatrixXd& a, const ConeStructure& cones,
                                   const SocpOptions& opts, const char* phase) {
  SolverOptions so = opts.solver;
  so.epsilon = 0.0;
  SolveResult r = solve(a, cones, so);
  if (r.status() == SolveStatus::DualNonzero) {
    throw Error(ErrorCode::AssumptionViolated,
                std::string(phase) + ": no interior primal-dual pair (solver found a dual certificate)");
  }
  if (r.status() != SolveStatus::PrimalInterior) {
    throw Error(ErrorCode::NumericalBreakdown, std::string(phase) + ": unexpected solver outcome");
  }
  const VectorXd& xh = std::get<PrimalResult>(r.outcome).x;
  HomogeneousSolve out;
  out.point = recover_from_homogeneous(xh);
  out.cond_bound = lambda_max(cones, xh) / lambda_min(cones, xh);
  out.stats = std::move(r.stats);
  return out;
}

PhaseResult finish(const StandardSocp& p, const Projector& proj, VectorXd x, VectorXd s) {
  PhaseResult r;
  r.y = proj.row_space_coefficients(p.c - s);
  r.x = std::move(x);
  r.s = std::move(s);
  r.gap = p.c.dot(r.x) - p.b.dot(r.y);
  r.eps_hat = std::min({lambda_min(p.cones, r.x), lambda_min(p.cones, r.s), 1.0});
  r.primal_residual = inf_norm(p.a * r.x - p.b) / (1.0 + inf_norm(p.b));
  r.dual_residual = inf_norm(r.s - p.c + p.a.transpose() * r.y) / (1.0 + inf_norm(p.c));
  return r;
}

// Rows [A 0 -b; 0 N' -N'c] in the variables (x, s, tau).
MatrixXd phase1_matrix(const StandardSocp& p, const Projector& proj) {
  const Index m = p.a.rows();
  const Index n = p.a.cols();
  const MatrixXd nt = proj.kernel_basis().transpose();
  const Index k = nt.rows();
  MatrixXd h = MatrixXd::Zero(m + k, 2 * n + 1);
  h.topLeftCorner(m, n) = p.a;
  h.block(0, 2 * n, m, 1) = -p.b;
  h.block(m, n, k, n) = nt;
  h.block(m, 2 * n, k, 1) = -nt * p.c;
  return h;
}

}  // namespace

PhaseResult phase1(const StandardSocp& p, const SocpOptions& opts) {
  p.validate();
  const Projector proj = Projector::build(p.a, opts.solver.rank_tol);
  const ConeStructure pair = p.cones.concat(p.cones);
  const ConeStructure cones = pair.concat(ConeStructure({Block::half_line()}));
  HomogeneousSolve hs = solve_homogeneous(phase1_matrix(p, proj), cones, opts, "phase I");

  const Index n = p.a.cols();
  PhaseResult r = finish(p, proj, hs.point.head(n), hs.point.segment(n, n));
  r.phase = 1;
  r.t = 0.5;
  r.m = r.gap;
  r.cond_bound = hs.cond_bound;
  r.stats = std::move(hs.stats);
  spdlog::debug("phase I: gap {:.6e}, eps_hat {:.3e}, cond bound {:.3e}", r.gap, r.eps_hat,
                r.cond_bound);
  return r;
}

PhaseResult phase2(const StandardSocp& p, const PhaseResult& p1, double t,
                   const SocpOptions& opts) {
  p.validate();
  if (!(t > 0.0 && t <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "phase II needs 0 < t <= 1/2");
  }
  if (!(p1.m > 0.0)) return p1;

  const Projector proj = Projector::build(p.a, opts.solver.rank_tol);
  const Index n = p.a.cols();
  const MatrixXd base = phase1_matrix(p, proj);
  const Index rows = base.rows();

  // On the Phase I rows y = (AA')^{-1} A (c - s), so gap = c'x + q's - q'c
  // with q = A'(AA')^{-1} b.
  const VectorXd q = proj.min_norm_solution(p.b);
  const double qc = q.dot(p.c);
  const double upper = 2.0 * t * p1.m;

  // Variables (x, s, sigma_1, sigma_2, tau).
  MatrixXd h = MatrixXd::Zero(rows + 2, 2 * n + 3);
  h.topLeftCorner(rows, 2 * n) = base.leftCols(2 * n);
  h.topRightCorner(rows, 1) = base.rightCols(1);
  for (Index i = 0; i < 2; ++i) {
    h.block(rows + i, 0, 1, n) = p.c.transpose();
    h.block(rows + i, n, 1, n) = q.transpose();
  }
  h(rows, 2 * n) = -1.0;
  h(rows, 2 * n + 2) = -qc;
  h(rows + 1, 2 * n + 1) = 1.0;
  h(rows + 1, 2 * n + 2) = -(qc + upper);

  const ConeStructure slacks({Block::half_line(), Block::half_line(), Block::half_line()});
  const ConeStructure cones = p.cones.concat(p.cones).concat(slacks);
  HomogeneousSolve hs = solve_homogeneous(h, cones, opts, "phase II");

  PhaseResult r = finish(p, proj, hs.point.head(n), hs.point.segment(n, n));
  r.phase = 2;
  r.t = t;
  r.m = p1.m;
  r.cond_bound = hs.cond_bound;
  r.stats = std::move(hs.stats);
  spdlog::debug("phase II (t = {:.3e}): gap {:.6e} <= {:.6e}", t, r.gap, upper);
  return r;
}

PhaseResult solve_to_gap(const StandardSocp& p, double delta, const SocpOptions& opts) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  PhaseResult p1 = phase1(p, opts);
  if (p1.gap <= delta || std::isinf(delta)) return p1;
  const double t = std::min(0.5, delta / (2.0 * p1.m));
  return phase2(p, p1, t, opts);
}

}  // namespace socrescale
