#include "socrescale/generate.hpp"

#include "socrescale/error.hpp"

#include <Eigen/QR>

#include <cmath>
#include <optional>

namespace socrescale {

namespace {

constexpr int kMaxRetries = 64;

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// (0, 1]
double uniform_open_closed(Rng& rng) { return 1.0 - uniform01(rng); }

MatrixXd gaussian_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  MatrixXd out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = nd(rng);
  }
  return out;
}

VectorXd gaussian_vector(Rng& rng, Index n) { return gaussian_matrix(rng, n, 1).col(0); }

// Orthonormal rows spanning the row space of a, or nothing if a is
// numerically rank deficient.
std::optional<MatrixXd> orthonormal_rows(const MatrixXd& a) {
  Eigen::HouseholderQR<MatrixXd> qr(a.transpose());
  const MatrixXd r = qr.matrixQR().topRows(a.rows()).triangularView<Eigen::Upper>();
  const double rmax = r.diagonal().cwiseAbs().maxCoeff();
  if (!(rmax > 0.0) || r.diagonal().cwiseAbs().minCoeff() < 1e-6 * rmax) return std::nullopt;
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(a.cols(), a.rows());
  return MatrixXd(q.transpose());
}

bool full_row_rank(const MatrixXd& a) { return orthonormal_rows(a).has_value(); }

void check_dims(Index m, const ConeStructure& cones, bool allow_square) {
  const Index n = cones.dim();
  if (cones.num_blocks() == 0) throw Error(ErrorCode::InvalidArgument, "empty cone structure");
  if (m < 1 || m > n || (!allow_square && m == n)) {
    throw Error(ErrorCode::InvalidArgument,
                "m = " + std::to_string(m) + " is out of range for dimension " +
                    std::to_string(n));
  }
}

VectorXd sample_witness(Rng& rng, const ConeStructure& cones) {
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    VectorXd x = sample_interior(rng, cones);
    x /= inf_norm(x);
    if (lambda_min(cones, x) >= kWitnessMargin) return x;
  }
  throw Error(ErrorCode::NumericalBreakdown, "could not sample a well-interior witness");
}

// Each block at relative distance about `margin` from the boundary.
VectorXd near_boundary(Rng& rng, const ConeStructure& cones, double margin) {
  VectorXd x(cones.dim());
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    auto xk = cones.segment(x, k);
    const double r = uniform_open_closed(rng);
    if (cones.block(k).kind == BlockKind::HalfLine) {
      xk(0) = margin + r;
      continue;
    }
    VectorXd dir = sample_unit_ball(rng, xk.size() - 1);
    dir.normalize();
    xk(0) = r + margin;
    xk.tail(xk.size() - 1) = r * dir;
  }
  return x / inf_norm(x);
}

VectorXd decoy(Rng& rng, const ConeStructure& cones, double strength) {
  VectorXd g(cones.dim());
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    auto gk = cones.segment(g, k);
    if (cones.block(k).kind == BlockKind::HalfLine) {
      gk(0) = std::uniform_real_distribution<double>(-strength, 1.0)(rng);
      continue;
    }
    VectorXd dir = sample_unit_ball(rng, gk.size() - 1);
    dir.normalize();
    const double a = uniform01(rng);
    gk(0) = a;
    gk.tail(gk.size() - 1) = (a + strength) * dir;
  }
  return g;
}

// Witness in column 0, decoys after it; nothing if the span is degenerate.
std::optional<MatrixXd> decoy_span(Rng& rng, const ConeStructure& cones, const DecoyOptions& opts,
                                   Index* rank_out) {
  const Index n = cones.dim();
  if (opts.decoys < 0 || opts.decoys + 2 > n) {
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(opts.decoys) + " decoys do not fit in dimension " +
                    std::to_string(n));
  }
  MatrixXd span(n, opts.decoys + 1);
  span.col(0) = near_boundary(rng, cones, opts.margin);
  for (Index j = 0; j < opts.decoys; ++j) span.col(j + 1) = decoy(rng, cones, opts.strength);
  if (!orthonormal_rows(span.transpose())) return std::nullopt;
  *rank_out = span.cols();
  return span;
}

}  // namespace

VectorXd sample_unit_ball(Rng& rng, Index d) {
  if (d == 0) return VectorXd();
  VectorXd dir = gaussian_vector(rng, d);
  double nrm = dir.norm();
  while (!(nrm > 0.0)) {
    dir = gaussian_vector(rng, d);
    nrm = dir.norm();
  }
  const double radius = std::pow(uniform01(rng), 1.0 / static_cast<double>(d));
  return dir * (radius / nrm);
}

VectorXd sample_interior_block(Rng& rng, BlockKind kind, Index d) {
  VectorXd x(d);
  if (kind == BlockKind::HalfLine) {
    x(0) = uniform_open_closed(rng);
    return x;
  }
  const VectorXd x1 = sample_unit_ball(rng, d - 1);
  x(0) = x1.norm() + uniform_open_closed(rng);
  x.tail(d - 1) = x1;
  return x;
}

VectorXd sample_interior(Rng& rng, const ConeStructure& cones) {
  VectorXd x(cones.dim());
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    cones.segment(x, k) = sample_interior_block(rng, cones.block(k).kind, cones.block_dim(k));
  }
  return x;
}

ConeStructure random_structure(Rng& rng, Index max_blocks, Index max_dim, double halfline_prob) {
  if (max_blocks < 1) throw Error(ErrorCode::InvalidArgument, "max_blocks must be >= 1");
  std::uniform_int_distribution<Index> count(1, max_blocks);
  std::uniform_int_distribution<Index> dim(2, std::max<Index>(2, max_dim));
  const Index n = count(rng);
  std::vector<Block> blocks;
  for (Index i = 0; i < n; ++i) {
    if (max_dim < 2 || uniform01(rng) < halfline_prob) {
      blocks.push_back(Block::half_line());
    } else {
      blocks.push_back(Block::second_order(dim(rng)));
    }
  }
  return ConeStructure(std::move(blocks));
}

PrimalFeasibleInstance gen_primal_feasible(std::uint64_t seed, Index m,
                                           const ConeStructure& cones) {
  check_dims(m, cones, false);
  Rng rng(seed);
  const VectorXd x = sample_witness(rng, cones);
  const Index n = cones.dim();
  const MatrixXd proj = MatrixXd::Identity(n, n) - x * x.transpose() / x.squaredNorm();
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    auto a = orthonormal_rows(gaussian_matrix(rng, m, n) * proj);
    if (!a) continue;
    // Remove the O(eps) component along x left by the orthonormalization.
    MatrixXd out = *a * proj;
    return {std::move(out), x};
  }
  throw Error(ErrorCode::RankDeficient, "generator could not produce a full-row-rank A");
}

DualFeasibleInstance gen_dual_feasible(std::uint64_t seed, Index m, const ConeStructure& cones) {
  check_dims(m, cones, true);
  Rng rng(seed);
  VectorXd s = sample_interior(rng, cones);
  s /= inf_norm(s);
  const Index n = cones.dim();
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const VectorXd u = gaussian_vector(rng, m);
    Index j = 0;
    if (!(u.cwiseAbs().maxCoeff(&j) > 1e-3)) continue;
    MatrixXd a = gaussian_matrix(rng, m, n);
    a.row(j).setZero();
    const VectorXd rest = a.transpose() * u;
    a.row(j) = -(s + rest).transpose() / u(j);
    if (!full_row_rank(a)) continue;
    return {std::move(a), s, u};
  }
  throw Error(ErrorCode::RankDeficient, "generator could not produce a full-row-rank A");
}

SocpInstance gen_socp(std::uint64_t seed, Index m, const ConeStructure& cones) {
  check_dims(m, cones, false);
  Rng rng(seed);
  const Index n = cones.dim();
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    MatrixXd a = gaussian_matrix(rng, m, n);
    if (!full_row_rank(a)) continue;
    SocpInstance out;
    out.x = sample_interior(rng, cones);
    out.s = sample_interior(rng, cones);
    out.y = gaussian_vector(rng, m);
    out.b = a * out.x;
    out.c = out.s + a.transpose() * out.y;
    out.a = std::move(a);
    return out;
  }
  throw Error(ErrorCode::RankDeficient, "generator could not produce a full-row-rank A");
}

PrimalFeasibleInstance gen_primal_with_decoys(std::uint64_t seed, const ConeStructure& cones,
                                              const DecoyOptions& opts) {
  Rng rng(seed);
  const Index n = cones.dim();
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Index r = 0;
    auto span = decoy_span(rng, cones, opts, &r);
    if (!span) continue;
    Eigen::HouseholderQR<MatrixXd> qr(*span);
    const MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
    MatrixXd a = q.rightCols(n - r).transpose();
    return {std::move(a), span->col(0)};
  }
  throw Error(ErrorCode::RankDeficient, "generator could not produce a full-row-rank A");
}

DualFeasibleInstance gen_dual_with_decoys(std::uint64_t seed, const ConeStructure& cones,
                                          const DecoyOptions& opts) {
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Index r = 0;
    auto span = decoy_span(rng, cones, opts, &r);
    if (!span) continue;
    MatrixXd a = *orthonormal_rows(span->transpose());
    const VectorXd s = span->col(0);
    // Rows are orthonormal and s lies in their span, so A'(A s) = s.
    VectorXd u = -(a * s);
    return {std::move(a), s, std::move(u)};
  }
  throw Error(ErrorCode::RankDeficient, "generator could not produce a full-row-rank A");
}

}  // namespace socrescale
