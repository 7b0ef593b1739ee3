#include "socrescale/montecarlo.hpp"

#include "socrescale/error.hpp"
#include "socrescale/projector.hpp"

#include <cmath>
#include <limits>

namespace socrescale {

McEstimate mc_volume(const HalfSpace& h, Index samples, std::uint64_t seed) {
  const Index d = h.dim();
  if (d < 2 || h.point.size() != d) throw Error(ErrorCode::InvalidArgument, "bad half-space");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  const double slack = h.normal(0) - h.normal.tail(d - 1).norm();
  const double level = h.level();
  if (!(slack > 0.0) || !(level > 0.0)) {
    throw Error(ErrorCode::NotInterior, "normal must be interior with w'v > 0");
  }
  const double x0max = level / slack;
  const double box = x0max * std::pow(2.0 * x0max, static_cast<double>(d - 1));

  Rng rng(seed);
  std::uniform_real_distribution<double> u0(0.0, x0max);
  std::uniform_real_distribution<double> u1(-x0max, x0max);
  VectorXd x(d);
  Index hits = 0;
  for (Index s = 0; s < samples; ++s) {
    x(0) = u0(rng);
    for (Index j = 1; j < d; ++j) x(j) = u1(rng);
    if (x.tail(d - 1).norm() <= x(0) && h.normal.dot(x) <= level) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  McEstimate est;
  est.value = p * box;
  est.std_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  est.hits = hits;
  est.samples = samples;
  return est;
}

VectorXd sample_stsoc(Rng& rng, Index d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 2");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // The slice at height x_0 is a ball of radius x_0, so x_0 has density
  // proportional to x_0^{d-1}.
  const double x0 = std::pow(1.0 - u(rng), 1.0 / static_cast<double>(d));
  VectorXd x(d);
  x(0) = x0;
  x.tail(d - 1) = x0 * sample_unit_ball(rng, d - 1);
  return x;
}

KernelSearch kernel_max_lambda_min(const MatrixXd& a, const ConeStructure& cones, Index samples,
                                   std::uint64_t seed) {
  if (a.cols() != cones.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const MatrixXd basis = Projector::build(a).kernel_basis();
  KernelSearch out;
  out.max_lambda_min = -std::numeric_limits<double>::infinity();
  const Index r = basis.cols();
  if (r == 0) return out;
  const double bound = std::sqrt(static_cast<double>(cones.dim()));
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-bound, bound);
  VectorXd t(r);
  VectorXd x(cones.dim());
  for (Index s = 0; s < samples; ++s) {
    for (Index j = 0; j < r; ++j) t(j) = u(rng);
    x.noalias() = basis * t;
    if (inf_norm(x) > 1.0) continue;
    ++out.accepted;
    const double lm = lambda_min(cones, x);
    if (lm > out.max_lambda_min) {
      out.max_lambda_min = lm;
      out.argmax = x;
    }
  }
  return out;
}

}  // namespace socrescale
