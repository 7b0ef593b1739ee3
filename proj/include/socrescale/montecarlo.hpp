#pragma once

#include "socrescale/cone.hpp"
#include "socrescale/generate.hpp"
#include "socrescale/tsoc.hpp"

#include <cstdint>

namespace socrescale {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Index hits = 0;
  Index samples = 0;
};

/// Rejection-sampling estimate of vol(K ∩ H(w, v)) for a single second-order
/// block (w interior, w'v > 0). Samples the box x_0 in [0, X],
/// x_1 in [-X, X]^{d-1} with X = w'v / (w_0 - |w_1|).
McEstimate mc_volume(const HalfSpace& h, Index samples, std::uint64_t seed);

/// Uniform sample of C(e, e) = { x in K : x_0 <= 1 } in dimension d >= 2.
VectorXd sample_stsoc(Rng& rng, Index d);

struct KernelSearch {
  double max_lambda_min = 0.0;
  VectorXd argmax;       // best accepted point, empty if none
  Index accepted = 0;
};

/// Rejection sampling over Ker(A) ∩ { |x|_inf <= 1 }: coordinates t of an
/// orthonormal kernel basis N are drawn uniformly from the box |t_i| <= sqrt(n)
/// and kept when |N t|_inf <= 1. Returns the largest lambda_min seen.
KernelSearch kernel_max_lambda_min(const MatrixXd& a, const ConeStructure& cones, Index samples,
                                   std::uint64_t seed);

}  // namespace socrescale
