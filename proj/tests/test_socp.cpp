#include "oracles.hpp"

#include "socrescale/error.hpp"
#include "socrescale/generate.hpp"
#include "socrescale/socp.hpp"
#include "socrescale/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace socrescale;

namespace {

MatrixXd m11(double v) { return MatrixXd::Constant(1, 1, v); }
VectorXd v1(double v) { return VectorXd::Constant(1, v); }

const ConeStructure kHalfLine({Block::half_line()});

StandardSocp generated(std::uint64_t seed, Index m, const char* blocks) {
  const ConeStructure c = ConeStructure::parse(blocks);
  const SocpInstance g = gen_socp(seed, m, c);
  return {g.a, g.b, g.c, c};
}

void expect_phase_ok(const StandardSocp& p, const PhaseResult& r) {
  EXPECT_EQ(r.x.size(), p.cones.dim());
  EXPECT_EQ(r.s.size(), p.cones.dim());
  EXPECT_EQ(r.y.size(), p.a.rows());
  const double scale = 1.0 + matrix_inf_norm(p.a) + inf_norm(p.b) + inf_norm(p.c);
  EXPECT_LE(inf_norm(p.a * r.x - p.b), 1e-6 * scale);
  EXPECT_LE(inf_norm(r.s - p.c + p.a.transpose() * r.y), 1e-6 * scale);
  EXPECT_GT(oracle::lambda_min(p.cones, r.x), 0.0);
  EXPECT_GT(oracle::lambda_min(p.cones, r.s), 0.0);
  EXPECT_NEAR(r.gap, p.c.dot(r.x) - p.b.dot(r.y), 1e-12 * (1 + std::abs(r.gap)));
  EXPECT_GE(r.gap, -1e-9);
}

}  // namespace

TEST(Homogenize, TrivialInstance) {
  const HomogeneousInstance h = homogenize_feasibility(m11(1), v1(1), kHalfLine);
  EXPECT_EQ(h.cones.num_blocks(), 2);
  EXPECT_EQ(h.a, (MatrixXd(1, 2) << 1, -1).finished());
  const SolveResult r = solve(h.a, h.cones);
  ASSERT_EQ(r.status(), SolveStatus::PrimalInterior);
  EXPECT_NEAR(recover_from_homogeneous(std::get<PrimalResult>(r.outcome).x)(0), 1.0, 1e-14);
}

TEST(Homogenize, InfeasibleGivesDual) {
  const HomogeneousInstance h = homogenize_feasibility(m11(1), v1(-1), kHalfLine);
  const SolveResult r = solve(h.a, h.cones);
  ASSERT_EQ(r.status(), SolveStatus::DualNonzero);
  const auto& d = std::get<DualResult>(r.outcome);
  EXPECT_TRUE(verify_dual(h.a, h.cones, d.s, d.u, 1e-10).ok);
}

TEST(Homogenize, RecoversFeasiblePoint) {
  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    const ConeStructure c = random_structure(rng, 4, 5);
    if (c.dim() < 2) continue;
    const SocpInstance g = gen_socp(i, 1 + i % (c.dim() - 1), c);
    const HomogeneousInstance h = homogenize_feasibility(g.a, g.b, c);
    const SolveResult r = solve(h.a, h.cones);
    ASSERT_EQ(r.status(), SolveStatus::PrimalInterior);
    const VectorXd x = recover_from_homogeneous(std::get<PrimalResult>(r.outcome).x);
    EXPECT_LE((g.a * x - g.b).norm(), 1e-6 * (g.b.norm() + g.a.norm() * x.norm()));
    EXPECT_GT(oracle::lambda_min(c, x), 0.0);
  }
  EXPECT_THROW(recover_from_homogeneous(Eigen::Vector2d(1, 0)), Error);
}

TEST(Phase1, LinearToy) {
  const StandardSocp p{m11(1), v1(1), v1(1), kHalfLine};
  const PhaseResult r = phase1(p);
  expect_phase_ok(p, r);
  EXPECT_NEAR(r.x(0), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.m, r.gap);
}

TEST(Phase1, GeneratedInstances) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const StandardSocp p = generated(seed, 3, "soc:3,halfline,soc:4");
    const PhaseResult r = phase1(p);
    expect_phase_ok(p, r);
    EXPECT_GT(r.eps_hat, 0.0);
    EXPECT_LE(r.eps_hat, 1.0);
    EXPECT_GE(r.cond_bound, 1.0);
  }
}

TEST(Phase1, ReportsViolatedAssumption) {
  // x = -1 on a half-line has no feasible point at all.
  const StandardSocp p{m11(1), v1(-1), v1(1), kHalfLine};
  try {
    phase1(p);
    FAIL() << "expected AssumptionViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AssumptionViolated);
  }
}

TEST(Phase2, HalfIsNoBetterThanPhaseOne) {
  const StandardSocp p = generated(3, 2, "soc:3,halfline");
  const PhaseResult p1 = phase1(p);
  const PhaseResult r = phase2(p, p1, 0.5);
  expect_phase_ok(p, r);
  EXPECT_LE(r.gap, p1.m * (1 + 1e-6));
}

TEST(Phase2, QuarterHalvesTheGap) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const StandardSocp p = generated(seed, 3, "soc:3,halfline,soc:2");
    const PhaseResult p1 = phase1(p);
    const PhaseResult r = phase2(p, p1, 0.25);
    expect_phase_ok(p, r);
    EXPECT_LE(r.gap, p1.m / 2 + 1e-6 * p1.m);
    EXPECT_EQ(r.phase, 2);
  }
}

TEST(Phase2, RejectsBadT) {
  const StandardSocp p = generated(1, 2, "soc:3,halfline");
  const PhaseResult p1 = phase1(p);
  EXPECT_THROW(phase2(p, p1, 0.0), Error);
  EXPECT_THROW(phase2(p, p1, 0.6), Error);
}

TEST(Phase2, ZeroGapReturnsImmediately) {
  const StandardSocp p = generated(1, 2, "soc:3,halfline");
  PhaseResult p1 = phase1(p);
  p1.m = 0.0;
  const PhaseResult r = phase2(p, p1, 0.25);
  EXPECT_EQ(r.phase, 1);
}

TEST(SolveToGap, ReachesTarget) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const StandardSocp p = generated(seed, 3, "soc:4,soc:3,halfline");
    const PhaseResult p1 = phase1(p);
    const double delta = 1e-3 * p1.m;
    const PhaseResult r = solve_to_gap(p, delta);
    expect_phase_ok(p, r);
    EXPECT_LE(r.gap, delta);
  }
}

TEST(SolveToGap, LargeDeltaStopsAfterPhaseOne) {
  const StandardSocp p = generated(2, 2, "soc:3,halfline");
  const PhaseResult p1 = phase1(p);
  EXPECT_EQ(solve_to_gap(p, p1.m).phase, 1);
  EXPECT_EQ(solve_to_gap(p, std::numeric_limits<double>::infinity()).phase, 1);
  EXPECT_EQ(solve_to_gap(p, 10 * p1.m).phase, 1);
}

TEST(CondUpperBound, Examples) {
  const ConeStructure c({Block::second_order(3), Block::half_line()});
  EXPECT_DOUBLE_EQ(cond_upper_bound(c, identity(c)), 1.0);
  VectorXd x(4);
  x << 1.05, 0.95, 0.0, 1.0;  // lambda_min 0.1, lambda_max 2
  EXPECT_NEAR(cond_upper_bound(c, x), 20.0, 1e-12);
}

TEST(CondUpperBound, DominatesRatioAtWitness) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const StandardSocp p = generated(seed, 2, "soc:3,halfline,soc:2");
    const PhaseResult r = phase1(p);
    const ConeStructure pair = p.cones.concat(p.cones);
    VectorXd xs(2 * p.cones.dim());
    xs << r.x, r.s;
    EXPECT_NEAR(r.cond_bound, cond_upper_bound(pair, xs), 1e-9 * r.cond_bound);
    EXPECT_GE(r.cond_bound, lambda_max(pair, xs) / lambda_min(pair, xs) * (1 - 1e-12));
  }
}

TEST(PhaseProperties, ConvexCombinationWithOptimum) {
  // min x_1 s.t. x_0 = 1 over a 2-d cone: the grid minimum is x* = (1, -1)
  // and the dual optimum is y* = -1, s* = (1, 1).
  MatrixXd a(1, 2);
  a << 1, 0;
  const StandardSocp p{a, v1(1), Eigen::Vector2d(0, 1), ConeStructure({Block::second_order(2)})};
  double best = INFINITY;
  double best_x1 = 0;
  for (int i = 0; i <= 2000; ++i) {
    const double x1 = -1.0 + i / 1000.0;
    if (p.c(1) * x1 < best) {
      best = p.c(1) * x1;
      best_x1 = x1;
    }
  }
  const Eigen::Vector2d x_opt(1, best_x1);
  const VectorXd y_opt = v1(-1);
  const VectorXd s_opt = p.c - a.transpose() * y_opt;
  EXPECT_NEAR(x_opt.dot(s_opt), 0.0, 1e-12);

  const PhaseResult p1 = phase1(p);
  const double floor = std::min(p1.eps_hat, p1.m);
  for (double t : {0.5, 0.25, 0.1, 0.01, 0.001}) {
    const VectorXd xt = t * p1.x + (1 - t) * x_opt;
    const VectorXd yt = t * p1.y + (1 - t) * y_opt;
    const VectorXd st = t * p1.s + (1 - t) * s_opt;
    EXPECT_NEAR((a * xt - p.b).norm(), 0.0, 1e-9);
    EXPECT_NEAR((st - p.c + a.transpose() * yt).norm(), 0.0, 1e-9);
    const double gap = p.c.dot(xt) - p.b.dot(yt);
    EXPECT_GE(gap, -1e-9);
    EXPECT_LE(gap, 2 * t * p1.m + 1e-9);
    EXPECT_GE(lambda_min(p.cones, xt), t * floor - 1e-9);
    EXPECT_GE(lambda_min(p.cones, st), t * floor - 1e-9);
  }
}
