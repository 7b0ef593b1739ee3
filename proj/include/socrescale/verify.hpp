#pragma once

#include "socrescale/cone.hpp"

#include <string>
#include <vector>

namespace socrescale {

struct VerifyReport {
  bool ok = true;
  double residual = 0.0;     // scaled constraint residual
  double lambda_min = 0.0;   // of x (primal) or s (dual)
  std::vector<std::string> messages;

  void fail(std::string msg) {
    ok = false;
    messages.push_back(std::move(msg));
  }
};

/// Induced infinity norm (max absolute row sum).
double matrix_inf_norm(const MatrixXd& a);

/// Checks |Ax|_inf <= tol |A|_inf |x|_inf and lambda_min(x) > 0.
VerifyReport verify_primal(const MatrixXd& a, const ConeStructure& cones, const VectorXd& x,
                           double tol);

/// Checks lambda_min(s) >= -tol, |s|_inf > tol and
/// |s + A'u|_inf <= tol * max(|s|_inf, |A|_inf |u|_inf). An empty u is
/// recomputed by least squares.
VerifyReport verify_dual(const MatrixXd& a, const ConeStructure& cones, const VectorXd& s,
                         const VectorXd& u, double tol);

/// Structural check of a no-eps-interior claim: valid block index and
/// v_k <= eps^{d_k}.
VerifyReport verify_no_eps(const ConeStructure& cones, Index k, double v_k, double epsilon);

}  // namespace socrescale
