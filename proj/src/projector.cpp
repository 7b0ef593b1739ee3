#include "socrescale/projector.hpp"

#include "socrescale/error.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace socrescale {

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

Projector Projector::build(const MatrixXd& a, double rank_tol, Strategy strategy,
                           Index explicit_threshold) {
  Projector p;
  p.m_ = a.rows();
  p.n_ = a.cols();
  if (p.m_ > p.n_) {
    throw Error(ErrorCode::RankDeficient,
                "A has more rows (" + std::to_string(p.m_) + ") than columns (" +
                    std::to_string(p.n_) + ")");
  }
  if (!a.allFinite()) throw Error(ErrorCode::InvalidArgument, "A has non-finite entries");

  p.qr_.compute(a.transpose());
  p.q_ = p.qr_.householderQ() * MatrixXd::Identity(p.n_, p.m_);
  p.r_ = p.qr_.matrixQR().topRows(p.m_).triangularView<Eigen::Upper>();

  if (p.m_ > 0) {
    VectorXd pivots = p.r_.diagonal().array().square();
    const double largest = pivots.maxCoeff();
    for (Index i = 0; i < p.m_; ++i) {
      if (!(pivots(i) > rank_tol * largest)) {
        throw Error(ErrorCode::RankDeficient,
                    "AA' pivot " + std::to_string(i) + " is " + fmt_g(pivots(i) / largest) +
                        " relative to the largest (tolerance " + fmt_g(rank_tol) + ")");
      }
    }
  }

  p.explicit_ = strategy == Strategy::Explicit ||
                (strategy == Strategy::Auto && p.n_ <= explicit_threshold);
  if (p.explicit_) {
    p.p_ = MatrixXd::Identity(p.n_, p.n_) - p.q_ * p.q_.transpose();
  }
  return p;
}

VectorXd Projector::apply(const ConstBlockRef& x) const {
  if (explicit_) return p_ * x;
  return x - q_ * (q_.transpose() * x);
}

VectorXd Projector::apply_block(Index offset, const ConstBlockRef& eta_block) const {
  const Index d = eta_block.size();
  if (explicit_) return p_.middleCols(offset, d) * eta_block;
  VectorXd out = -q_ * (q_.middleRows(offset, d).transpose() * eta_block);
  out.segment(offset, d) += eta_block;
  return out;
}

VectorXd Projector::row_space_coefficients(const ConstBlockRef& r) const {
  if (m_ == 0) return VectorXd();
  VectorXd qtr = q_.transpose() * r;
  return r_.triangularView<Eigen::Upper>().solve(qtr);
}

VectorXd Projector::min_norm_solution(const ConstBlockRef& b) const {
  if (m_ == 0) return VectorXd::Zero(n_);
  VectorXd w = r_.transpose().triangularView<Eigen::Lower>().solve(b);
  return q_ * w;
}

MatrixXd Projector::kernel_basis() const {
  if (m_ == 0) return MatrixXd::Identity(n_, n_);
  MatrixXd full_q = qr_.householderQ() * MatrixXd::Identity(n_, n_);
  return full_q.rightCols(n_ - m_);
}

MatrixXd Projector::matrix() const {
  if (explicit_) return p_;
  return MatrixXd::Identity(n_, n_) - q_ * q_.transpose();
}

}  // namespace socrescale
