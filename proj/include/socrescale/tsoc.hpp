#pragma once

#include "socrescale/cone.hpp"

namespace socrescale {

/// H(w, v) = { x : w'x <= w'v }. Cuts use w, v in the cone interior with w'v > 0.
struct HalfSpace {
  VectorXd normal;
  VectorXd point;

  double level() const { return normal.dot(point); }
  Index dim() const { return normal.size(); }
  bool contains(const ConstBlockRef& x, double tol = 0.0) const {
    return normal.dot(x) <= level() + tol;
  }
};

/// A d-by-d linear map G with G K = K for a single second-order cone K, with
/// its determinant cached. Half-line blocks use the 1-by-1 case.
class BlockAutomorphism {
 public:
  BlockAutomorphism() = default;
  BlockAutomorphism(MatrixXd matrix, double det) : matrix_(std::move(matrix)), det_(det) {}

  static BlockAutomorphism scalar(Index d, double factor);

  const MatrixXd& matrix() const { return matrix_; }
  double det() const { return det_; }
  Index dim() const { return matrix_.rows(); }

 private:
  MatrixXd matrix_;
  double det_ = 1.0;
};

/// Volume of the standard truncated cone { x in K : x_0 <= 1 } in dimension d >= 2:
///   V_d = pi^((d-1)/2) / (d * Gamma((d-1)/2 + 1)).
double std_tsoc_volume(Index d);

/// The hyperbolic rotation sending e to w / sqrt(det w); unit determinant.
BlockAutomorphism tilde_g(const ConstBlockRef& w);
BlockAutomorphism tilde_g_inverse(const ConstBlockRef& w);

/// G = (w'v / gamma) * tilde_g_inverse(w), mapping C(e, e) onto C(w, v).
BlockAutomorphism automorphism_from_cut(const HalfSpace& h);

/// vol C(w, v) = (w'v / sqrt(w_0^2 - |w_1|^2))^d * V_d.
double otsoc_volume(const HalfSpace& h);

/// Volume-minimizing normal through v: w = (v_0; -v_1).
HalfSpace min_volume_normal(const ConstBlockRef& v);

/// Checks G'EG = lambda E with lambda > 0 (E = diag(1, -I)) to relative
/// tolerance tol, and that G e lies in the interior of the cone.
bool check_automorphism(const MatrixXd& g, double tol);

}  // namespace socrescale
