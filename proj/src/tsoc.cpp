#include "socrescale/tsoc.hpp"

#include "socrescale/error.hpp"

#include <cmath>
#include <numbers>

namespace socrescale {

namespace {

struct Boost {
  double gamma;
  double alpha;
  VectorXd beta;
};

Boost boost_of(const ConstBlockRef& w) {
  if (w.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "second-order block needs dim >= 2");
  }
  double det = block_det(BlockKind::SecondOrder, w);
  if (!(w(0) > 0.0) || !(det > 0.0)) {
    throw Error(ErrorCode::NotInterior, "normal vector is not in the cone interior");
  }
  double gamma = std::sqrt(det);
  return {gamma, w(0) / gamma, w.tail(w.size() - 1) / gamma};
}

MatrixXd boost_matrix(const Boost& b, double sign) {
  const Index d = b.beta.size() + 1;
  MatrixXd g(d, d);
  g(0, 0) = b.alpha;
  g.block(0, 1, 1, d - 1) = sign * b.beta.transpose();
  g.block(1, 0, d - 1, 1) = sign * b.beta;
  g.block(1, 1, d - 1, d - 1) = MatrixXd::Identity(d - 1, d - 1) +
                                b.beta * b.beta.transpose() / (1.0 + b.alpha);
  return g;
}

}  // namespace

BlockAutomorphism BlockAutomorphism::scalar(Index d, double factor) {
  return {factor * MatrixXd::Identity(d, d), std::pow(factor, static_cast<double>(d))};
}

double std_tsoc_volume(Index d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "std_tsoc_volume needs d >= 2");
  const double h = 0.5 * static_cast<double>(d - 1);
  return std::pow(std::numbers::pi, h) / (static_cast<double>(d) * std::tgamma(h + 1.0));
}

BlockAutomorphism tilde_g(const ConstBlockRef& w) {
  return {boost_matrix(boost_of(w), 1.0), 1.0};
}

BlockAutomorphism tilde_g_inverse(const ConstBlockRef& w) {
  return {boost_matrix(boost_of(w), -1.0), 1.0};
}

BlockAutomorphism automorphism_from_cut(const HalfSpace& h) {
  if (h.normal.size() != h.point.size()) {
    throw Error(ErrorCode::InvalidArgument, "half-space normal and point differ in size");
  }
  Boost b = boost_of(h.normal);
  const double level = h.level();
  if (!(level > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "cut requires w'v > 0");
  }
  // alpha v_0 + beta' v_1 == w'v / gamma
  const double scale = level / b.gamma;
  return {scale * boost_matrix(b, -1.0), std::pow(scale, static_cast<double>(h.dim()))};
}

double otsoc_volume(const HalfSpace& h) {
  Boost b = boost_of(h.normal);
  return std::pow(h.level() / b.gamma, static_cast<double>(h.dim())) * std_tsoc_volume(h.dim());
}

HalfSpace min_volume_normal(const ConstBlockRef& v) {
  if (!(block_lambda_min(BlockKind::SecondOrder, v) > 0.0)) {
    throw Error(ErrorCode::NotInterior, "boundary point must be in the cone interior");
  }
  VectorXd w = -v;
  w(0) = v(0);
  return {std::move(w), VectorXd(v)};
}

bool check_automorphism(const MatrixXd& g, double tol) {
  const Index d = g.rows();
  if (d < 2 || g.cols() != d) return false;
  VectorXd sig = -VectorXd::Ones(d);
  sig(0) = 1.0;
  MatrixXd gram = g.transpose() * sig.asDiagonal() * g;
  const double lambda = gram(0, 0);
  if (!(lambda > 0.0)) return false;
  MatrixXd expected = lambda * MatrixXd(sig.asDiagonal());
  if ((gram - expected).cwiseAbs().maxCoeff() > tol * lambda) return false;
  VectorXd ge = g.col(0);
  return block_lambda_min(BlockKind::SecondOrder, ge) > 0.0;
}

}  // namespace socrescale
