#include "socrescale/cut.hpp"

#include "socrescale/error.hpp"

#include <cmath>
#include <numbers>

namespace socrescale {

namespace {

constexpr double kEtaSlack = 1e-10;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

const char* to_string(CutCase c) {
  switch (c) {
    case CutCase::HalfLine: return "halfline";
    case CutCase::One: return "one";
    case CutCase::Two: return "two";
  }
  return "unknown";
}

BlockAutomorphism Cut::automorphism() const {
  if (kind == CutCase::HalfLine) return BlockAutomorphism::scalar(1, kInvSqrt2);
  return automorphism_from_cut(halfspace);
}

Cut build_cut(Index k, BlockKind kind, const ConstBlockRef& y_k) {
  if (!(y_k(0) > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "cut generating block needs y_k0 > 0");
  }
  Cut cut;
  cut.k = k;
  if (kind == BlockKind::HalfLine) {
    cut.kind = CutCase::HalfLine;
    cut.volume_factor = kInvSqrt2;
    return cut;
  }

  const Index d = y_k.size();
  VectorXd y1_hat = y_k.tail(d - 1) / y_k(0);
  double eta = y_k.tail(d - 1).norm() / y_k(0);
  if (eta > 1.0 + kEtaSlack) {
    throw Error(ErrorCode::NotInterior, "cut generating block is outside the cone");
  }
  if (eta > 1.0 - kEtaSlack) eta = 1.0;
  cut.eta = eta;

  if (eta <= kCutCaseThreshold) {
    cut.kind = CutCase::One;
    VectorXd v = VectorXd::Zero(d);
    v(0) = kInvSqrt2;
    cut.halfspace = {VectorXd(y_k), std::move(v)};
  } else {
    cut.kind = CutCase::Two;
    const double a = (1.0 - kInvSqrt2) / (eta * eta);
    VectorXd w(d), v(d);
    w(0) = 1.0;
    v(0) = 1.0;
    w.tail(d - 1) = a * y1_hat;
    v.tail(d - 1) = -a * y1_hat;
    cut.halfspace = {std::move(w), std::move(v)};
  }
  cut.volume_factor = otsoc_volume(cut.halfspace) / std_tsoc_volume(d);
  return cut;
}

double g1(double eta, Index d) {
  if (!(eta >= 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidArgument, "g1 needs 0 <= eta < 1");
  return std::pow(2.0 * (1.0 - eta * eta), -0.5 * static_cast<double>(d)) * std_tsoc_volume(d);
}

double g2(double eta, Index d) {
  const double lower = std::sqrt(1.0 - kInvSqrt2);
  if (!(eta > lower && eta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "g2 needs sqrt(1 - 1/sqrt(2)) < eta <= 1");
  }
  const double c = 1.5 - std::numbers::sqrt2;
  return std::pow(1.0 - c / (eta * eta), 0.5 * static_cast<double>(d)) * std_tsoc_volume(d);
}

}  // namespace socrescale
