#include "oracles.hpp"

#include "socrescale/basic_procedure.hpp"
#include "socrescale/error.hpp"
#include "socrescale/generate.hpp"
#include "socrescale/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace socrescale;

namespace {

ConeStructure soc3() { return ConeStructure({Block::second_order(3)}); }

MatrixXd row(double a, double b, double c) {
  MatrixXd m(1, 3);
  m << a, b, c;
  return m;
}

}  // namespace

TEST(BasicProcedure, PrimalAtIterationZero) {
  const ConeStructure c = soc3();
  const Projector p = Projector::build(row(0, 0, 1));
  const BasicOutcome out = run_basic_procedure(p, c, identity(c));
  ASSERT_TRUE(out.is_primal());
  EXPECT_EQ(out.iterations, 0);
  EXPECT_TRUE(std::get<PrimalInterior>(out.result).z.isApprox(Eigen::Vector3d(1, 0, 0)));
}

TEST(BasicProcedure, DualAtIterationZero) {
  const ConeStructure c = soc3();
  const Projector p = Projector::build(row(1, 0, 0));
  const BasicOutcome out = run_basic_procedure(p, c, identity(c));
  ASSERT_TRUE(out.is_dual());
  EXPECT_EQ(out.iterations, 0);
  EXPECT_TRUE(std::get<DualNonzero>(out.result).y.isApprox(Eigen::Vector3d(1, 0, 0)));
}

TEST(BasicProcedure, RejectsBadInput) {
  const ConeStructure c = soc3();
  const Projector p = Projector::build(row(1, 0, 0));
  EXPECT_THROW(run_basic_procedure(p, c, 2.0 * identity(c)), Error);
  EXPECT_THROW(run_basic_procedure(p, c, Eigen::Vector3d(1, 1, 0)), Error);
}

TEST(CutIndex, Examples) {
  ConeStructure two({Block::second_order(3), Block::half_line()});
  const VectorXd y = identity(two) / 2.0;
  EXPECT_EQ(cut_index(two, VectorXd::Zero(4), y), std::optional<Index>(0));

  ConeStructure four({Block::half_line(), Block::half_line(), Block::half_line(),
                      Block::second_order(2)});
  VectorXd z = VectorXd::Zero(5);
  z(0) = 1.0;
  EXPECT_FALSE(cut_index(four, z, identity(four)).has_value());

  const ConeStructure c = soc3();
  const Eigen::Vector3d zz(0.4, 0, 0);
  EXPECT_EQ(cut_index(c, zz, identity(c)), std::optional<Index>(0));
}

TEST(BuildEta, Examples) {
  const VectorXd eta = build_eta(BlockKind::SecondOrder, Eigen::Vector3d(1, 2, 0));
  EXPECT_TRUE(eta.isApprox(Eigen::Vector3d(1, -1, 0)));
  EXPECT_NEAR(eta.dot(Eigen::Vector3d(1, 2, 0)), -1.0, 1e-15);

  const VectorXd e = build_eta(BlockKind::SecondOrder, Eigen::Vector3d(-1, 0.3, -0.2));
  EXPECT_EQ(e, Eigen::Vector3d(1, 0, 0));

  VectorXd neg(1);
  neg << -0.3;
  EXPECT_EQ(build_eta(BlockKind::HalfLine, neg), VectorXd::Ones(1));

  EXPECT_THROW(build_eta(BlockKind::SecondOrder, Eigen::Vector3d(2, 1, 0)), Error);
  EXPECT_THROW(build_eta(BlockKind::SecondOrder, Eigen::Vector3d(0, 0, 0)), Error);
}

TEST(BuildEta, Properties) {
  Rng rng(41);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 1000; ++i) {
    const Index d = 2 + i % 8;
    VectorXd z(d);
    for (Index j = 0; j < d; ++j) z(j) = nd(rng);
    if (z(0) - z.tail(d - 1).norm() > 0.0) z(0) = -z(0);
    const VectorXd eta = build_eta(BlockKind::SecondOrder, z);
    EXPECT_DOUBLE_EQ(eta(0), 1.0);
    EXPECT_GE(eta(0) - eta.tail(d - 1).norm(), -1e-15);
    EXPECT_LE(eta.dot(z), 1e-12 * z.norm());
    EXPECT_LE(eta.squaredNorm(), 2.0 + 1e-14);
  }
}

TEST(BasicStep, OrthogonalCase) {
  const VectorXd y = Eigen::Vector2d(0.5, 0.5);
  const StepResult s = basic_step(y, Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0),
                                  Eigen::Vector2d(0, 1));
  EXPECT_DOUBLE_EQ(s.alpha, 0.5);
  EXPECT_TRUE(s.z.isApprox(Eigen::Vector2d(0.5, 0.5)));
  EXPECT_DOUBLE_EQ(1.0 / s.z.squaredNorm(), 2.0);
}

TEST(BasicStep, EqualityCaseOfTheBound) {
  // p'z = 0 and |p|^2 = 2 gives an increase of exactly 1/2.
  const Eigen::Vector3d z(0.3, 0, 0);
  const Eigen::Vector3d p(0, 1, 1);
  const Eigen::Vector3d eta(1, 0, 0);
  const StepResult s = basic_step(Eigen::Vector3d(1, 0, 0), z, eta, p);
  EXPECT_NEAR(1.0 / s.z.squaredNorm(), 1.0 / z.squaredNorm() + 0.5, 1e-12);
}

TEST(BasicStep, AffineCombinationKeepsTrace) {
  Rng rng(42);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    const ConeStructure c = random_structure(rng, 4, 5);
    VectorXd y = sample_interior(rng, c);
    y /= identity(c).dot(y);
    VectorXd z(c.dim()), p(c.dim());
    for (Index j = 0; j < c.dim(); ++j) {
      z(j) = nd(rng);
      p(j) = nd(rng);
    }
    if (p.dot(z) > 0) p = -p;
    VectorXd eta = identity(c) / static_cast<double>(c.num_blocks());
    const StepResult s = basic_step(y, z, eta, p);
    EXPECT_NEAR(identity(c).dot(s.y), 1.0, 1e-12);
    EXPECT_GT(s.alpha, 0.0);
    EXPECT_LT(s.alpha, 1.0);
  }
  EXPECT_THROW(basic_step(Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 0),
                          Eigen::Vector2d(1, 1)),
               Error);
}

TEST(BasicProcedureProperties, OutcomesMatchTheirTags) {
  Rng rng(43);
  int cuts = 0;
  int steps = 0;
  for (int i = 0; i < 200; ++i) {
    const ConeStructure c = random_structure(rng, 6, 6);
    if (c.dim() < 4) continue;
    DecoyOptions opt;
    opt.margin = i % 3 == 0 ? 0.0 : 0.01;
    opt.decoys = 1 + i % 2;
    const MatrixXd a = i % 2 ? gen_dual_with_decoys(i, c, opt).a : gen_primal_with_decoys(i, c, opt).a;
    const Projector p = Projector::build(a);
    const VectorXd y_in = identity(c) / static_cast<double>(c.num_blocks());
    const BasicOutcome out = run_basic_procedure(p, c, y_in);
    steps += static_cast<int>(out.iterations);
    EXPECT_LE(out.iterations, default_bp_max_iters(c.num_blocks()));
    if (out.iterations > 0) {
      EXPECT_GE(out.min_progress, 0.5 - 1e-6);
    }
    if (const auto* cv = std::get_if<CutVector>(&out.result)) {
      ++cuts;
      const double lhs = 2.0 * std::sqrt(static_cast<double>(c.num_blocks())) * p.apply(cv->y).norm();
      EXPECT_LE(lhs, cv->y(c.offset(cv->k)) * (1 + 1e-12));
      EXPECT_NEAR(identity(c).dot(cv->y), 1.0, 1e-10);
      EXPECT_GT(oracle::lambda_min(c, cv->y), 0.0);
    } else if (const auto* pi = std::get_if<PrimalInterior>(&out.result)) {
      EXPECT_TRUE(verify_primal(a, c, pi->z, 1e-8).ok);
    } else {
      const auto& d = std::get<DualNonzero>(out.result);
      EXPECT_TRUE(verify_dual(a, c, d.y, VectorXd(), 1e-8).ok);
    }
  }
  EXPECT_GT(cuts, 0);
  EXPECT_GT(steps, 0);
}

TEST(BasicProcedureProperties, CutVectorBoundsWitness) {
  // On a cut with generating block k, every feasible x with |x|_inf <= 1
  // satisfies y_k'x_k <= y_k0 / sqrt(2).
  Rng rng(44);
  int checked = 0;
  for (int i = 0; i < 300 && checked < 40; ++i) {
    const ConeStructure c = random_structure(rng, 6, 6);
    if (c.dim() < 4) continue;
    DecoyOptions opt;
    opt.margin = 0.01;
    const auto inst = gen_primal_with_decoys(1000 + i, c, opt);
    const BasicOutcome out = run_basic_procedure(
        Projector::build(inst.a), c, identity(c) / static_cast<double>(c.num_blocks()));
    if (const auto* cv = std::get_if<CutVector>(&out.result)) {
      ++checked;
      const auto yk = c.segment(cv->y, cv->k);
      const auto xk = c.segment(inst.witness, cv->k);
      EXPECT_LE(yk.dot(xk), yk(0) / std::sqrt(2.0) + 1e-8);
    }
  }
  EXPECT_GT(checked, 0);
}
