#include "socrescale/verify.hpp"

#include "socrescale/error.hpp"
#include "socrescale/projector.hpp"

#include <cmath>
#include <sstream>

namespace socrescale {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double matrix_inf_norm(const MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

VerifyReport verify_primal(const MatrixXd& a, const ConeStructure& cones, const VectorXd& x,
                           double tol) {
  VerifyReport rep;
  if (x.size() != cones.dim() || a.cols() != x.size()) {
    rep.fail("x has length " + std::to_string(x.size()) + ", expected " +
             std::to_string(cones.dim()));
    return rep;
  }
  const double xn = inf_norm(x);
  const double scale = matrix_inf_norm(a) * xn;
  const double res = a.rows() > 0 ? inf_norm(a * x) : 0.0;
  rep.residual = scale > 0.0 ? res / scale : res;
  rep.lambda_min = lambda_min(cones, x);
  if (xn == 0.0) rep.fail("x is zero");
  if (res > tol * scale) {
    rep.fail("|Ax|_inf = " + fmt_double(res) + " exceeds " + fmt_double(tol * scale));
  }
  if (!(rep.lambda_min > 0.0)) {
    rep.fail("lambda_min(x) = " + fmt_double(rep.lambda_min) + " is not positive");
  }
  return rep;
}

VerifyReport verify_dual(const MatrixXd& a, const ConeStructure& cones, const VectorXd& s,
                         const VectorXd& u, double tol) {
  VerifyReport rep;
  if (s.size() != cones.dim() || a.cols() != s.size()) {
    rep.fail("s has length " + std::to_string(s.size()) + ", expected " +
             std::to_string(cones.dim()));
    return rep;
  }
  VectorXd mult = u;
  if (mult.size() == 0 && a.rows() > 0) {
    try {
      mult = -Projector::build(a).row_space_coefficients(s);
    } catch (const Error& err) {
      rep.fail(std::string("cannot recompute u: ") + err.what());
      return rep;
    }
  }
  if (mult.size() != a.rows()) {
    rep.fail("u has length " + std::to_string(mult.size()) + ", expected " +
             std::to_string(a.rows()));
    return rep;
  }
  const double sn = inf_norm(s);
  const double scale = std::max(sn, matrix_inf_norm(a) * inf_norm(mult));
  const double res = inf_norm(s + a.transpose() * mult);
  rep.residual = scale > 0.0 ? res / scale : res;
  rep.lambda_min = lambda_min(cones, s);
  if (!(sn > tol)) rep.fail("s is zero (|s|_inf = " + fmt_double(sn) + ")");
  if (rep.lambda_min < -tol * std::max(sn, 1.0)) {
    rep.fail("lambda_min(s) = " + fmt_double(rep.lambda_min) + " is below -tol");
  }
  if (res > tol * scale) {
    rep.fail("|s + A'u|_inf = " + fmt_double(res) + " exceeds " + fmt_double(tol * scale));
  }
  return rep;
}

VerifyReport verify_no_eps(const ConeStructure& cones, Index k, double v_k, double epsilon) {
  VerifyReport rep;
  if (k < 0 || k >= cones.num_blocks()) {
    rep.fail("block index " + std::to_string(k) + " out of range");
    return rep;
  }
  const double threshold = std::pow(epsilon, static_cast<double>(cones.block_dim(k)));
  rep.residual = v_k;
  if (!(epsilon > 0.0)) rep.fail("epsilon must be positive for a no-eps claim");
  if (!(v_k > 0.0)) rep.fail("ledger value must be positive");
  if (!(v_k <= threshold)) {
    rep.fail("v_k = " + fmt_double(v_k) + " exceeds eps^d_k = " + fmt_double(threshold));
  }
  return rep;
}

}  // namespace socrescale
