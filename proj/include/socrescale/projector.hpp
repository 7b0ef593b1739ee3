#pragma once

#include "socrescale/cone.hpp"

#include <Eigen/QR>

namespace socrescale {

/// Orthogonal projector onto Ker(A) for a full-row-rank A (m <= n).
///
/// Built from a thin Householder QR of A', so A' = Q R and R'R = AA' is the
/// Cholesky factorization of AA'. The rank test is applied to its pivots
/// R_ii^2. Small problems keep the explicit n-by-n matrix I - QQ'; larger ones
/// apply I - QQ' in factored form.
class Projector {
 public:
  enum class Strategy { Auto, Explicit, Factored };

  static constexpr double kDefaultRankTol = 1e-12;
  static constexpr Index kExplicitThreshold = 512;

  static Projector build(const MatrixXd& a, double rank_tol = kDefaultRankTol,
                         Strategy strategy = Strategy::Auto,
                         Index explicit_threshold = kExplicitThreshold);

  Index rows() const { return m_; }
  Index cols() const { return n_; }
  bool is_explicit() const { return explicit_; }

  VectorXd apply(const ConstBlockRef& x) const;

  /// P * eta where eta is zero outside [offset, offset + eta_block.size()).
  /// Costs O(n * d) in explicit form.
  VectorXd apply_block(Index offset, const ConstBlockRef& eta_block) const;

  /// u minimizing |A'u - r|, i.e. (AA')^{-1} A r.
  VectorXd row_space_coefficients(const ConstBlockRef& r) const;

  /// Minimum-norm solution of A x = b, i.e. A'(AA')^{-1} b.
  VectorXd min_norm_solution(const ConstBlockRef& b) const;

  /// Orthonormal basis of Ker(A), n-by-(n - m).
  MatrixXd kernel_basis() const;

  /// Orthonormal basis of Range(A'), n-by-m.
  const MatrixXd& row_space_basis() const { return q_; }

  /// Dense n-by-n matrix of the projector.
  MatrixXd matrix() const;

 private:
  Index m_ = 0;
  Index n_ = 0;
  bool explicit_ = true;
  Eigen::HouseholderQR<MatrixXd> qr_;
  MatrixXd q_;  // n x m, orthonormal basis of Range(A')
  MatrixXd r_;  // m x m upper triangular
  MatrixXd p_;  // explicit projector, when stored
};

}  // namespace socrescale
