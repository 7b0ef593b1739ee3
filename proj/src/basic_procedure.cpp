#include "socrescale/basic_procedure.hpp"

#include "socrescale/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace socrescale {

namespace {

constexpr double kEtaUnitSlack = 1e-10;
constexpr double kEtaProductSlack = 1e-10;
constexpr double kDegenerateStep = 1e-14;

VectorXd unit_block(Index d) {
  VectorXd e = VectorXd::Zero(d);
  e(0) = 1.0;
  return e;
}

struct Candidate {
  Index block;
  double score;
};

}  // namespace

Index default_bp_max_iters(Index num_blocks) {
  const double n = static_cast<double>(num_blocks);
  return static_cast<Index>(std::ceil(8.0 * n * n * n)) + 8;
}

std::optional<Index> cut_index(const ConeStructure& cones, const ConstBlockRef& z,
                               const ConstBlockRef& y) {
  const double lhs = 2.0 * std::sqrt(static_cast<double>(cones.num_blocks())) * z.norm();
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    if (lhs <= y(cones.offset(k))) return k;
  }
  return std::nullopt;
}

VectorXd build_eta(BlockKind kind, const ConstBlockRef& z_i) {
  if (z_i.size() == 0 || z_i.norm() == 0.0) {
    throw Error(ErrorCode::NotApplicable, "build_eta: block is zero");
  }
  if (block_lambda_min(kind, z_i) > 0.0) {
    throw Error(ErrorCode::NotApplicable, "build_eta: block is interior");
  }
  const Index d = z_i.size();
  if (kind == BlockKind::HalfLine || z_i(0) <= 0.0) return unit_block(d);

  // z_hat - e has a zero center coordinate and rotational part z_1 / z_0.
  VectorXd diff = z_i / z_i(0);
  diff(0) = 0.0;
  const double dn = diff.norm();
  if (dn < 1.0 - kEtaUnitSlack) {
    throw Error(ErrorCode::NotApplicable, "build_eta: block is interior up to rounding");
  }
  VectorXd eta = -diff / dn;
  eta(0) = 1.0;
  return eta;
}

StepResult basic_step(const ConstBlockRef& y, const ConstBlockRef& z, const ConstBlockRef& eta,
                      const ConstBlockRef& p) {
  VectorXd diff = z - p;
  const double dsq = diff.squaredNorm();
  if (std::sqrt(dsq) <= kDegenerateStep * (z.norm() + p.norm())) {
    throw Error(ErrorCode::DegenerateStep, "basic step: z and p coincide");
  }
  StepResult out;
  out.alpha = -p.dot(diff) / dsq;
  out.y = out.alpha * y + (1.0 - out.alpha) * eta;
  out.z = out.alpha * z + (1.0 - out.alpha) * p;
  return out;
}

BasicOutcome run_basic_procedure(const Projector& projector, const ConeStructure& cones,
                                 const ConstBlockRef& y_in, const BasicOptions& opts) {
  const Index n = cones.num_blocks();
  if (y_in.size() != cones.dim() || projector.cols() != cones.dim()) {
    throw Error(ErrorCode::InvalidArgument, "basic procedure: dimension mismatch");
  }
  const VectorXd e = identity(cones);
  if (std::abs(e.dot(y_in) - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "basic procedure: e'y must equal 1");
  }
  if (!(lambda_min(cones, y_in) > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "basic procedure: y must be interior");
  }
  const Index cap = opts.max_iters > 0 ? opts.max_iters : default_bp_max_iters(n);

  BasicOutcome out;
  out.min_progress = std::numeric_limits<double>::infinity();
  VectorXd y = y_in;
  VectorXd z = projector.apply(y);
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>(n));

  auto finish = [&](auto&& result) {
    out.result = std::forward<decltype(result)>(result);
    const double zsq = z.squaredNorm();
    out.inv_norm_sq = zsq > 0.0 ? 1.0 / zsq : std::numeric_limits<double>::infinity();
    return out;
  };

  for (;;) {
    const double ynorm = y.norm();
    const double znorm = z.norm();

    // Termination checks on z, in order: zero, dual point y - z, interior, cut.
    if (znorm <= opts.tol_zero * ynorm) return finish(DualNonzero{y});
    {
      VectorXd range_part = y - z;
      if (range_part.norm() > opts.tol_dual * ynorm && lambda_min(cones, range_part) >= 0.0) {
        return finish(DualNonzero{std::move(range_part)});
      }
    }
    if (lambda_min(cones, z) > 0.0) return finish(PrimalInterior{z});
    if (auto k = cut_index(cones, z, y)) return finish(CutVector{y, *k});

    if (out.iterations >= cap) {
      throw Error(ErrorCode::IterationCapExceeded,
                  "basic procedure exceeded " + std::to_string(cap) + " iterations");
    }

    // Pick the most violated block; ties go to the lowest index.
    candidates.clear();
    Index fallback = -1;
    for (Index i = 0; i < n; ++i) {
      auto zi = cones.segment(z, i);
      const double lm = block_lambda_min(cones.block(i).kind, zi);
      if (lm > 0.0) continue;
      const double zn = zi.norm();
      if (zn > opts.tol_zero * ynorm) {
        candidates.push_back({i, lm / zn});
      } else if (fallback < 0) {
        fallback = i;
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score < b.score; });

    Index chosen = -1;
    VectorXd eta_i;
    for (const Candidate& c : candidates) {
      try {
        eta_i = build_eta(cones.block(c.block).kind, cones.segment(z, c.block));
        chosen = c.block;
        break;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotApplicable) throw;
      }
    }
    if (chosen < 0) {
      if (fallback < 0) {
        throw Error(ErrorCode::NumericalBreakdown,
                    "basic procedure: no non-interior block although z is not interior");
      }
      // z_i is zero up to tolerance; e_i satisfies eta_i'z_i <= 0 trivially.
      chosen = fallback;
      eta_i = unit_block(cones.block_dim(chosen));
    }

    const Index off = cones.offset(chosen);
    auto zi = cones.segment(z, chosen);
    if (eta_i.dot(zi) > kEtaProductSlack * zi.norm()) {
      throw Error(ErrorCode::ProgressViolated,
                  "basic procedure: eta'z > 0 on block " + std::to_string(chosen));
    }

    VectorXd p = projector.apply_block(off, eta_i);
    if (p.norm() <= opts.tol_zero * eta_i.norm()) {
      VectorXd eta = VectorXd::Zero(cones.dim());
      eta.segment(off, eta_i.size()) = eta_i;
      return finish(DualNonzero{std::move(eta)});
    }
    if (lambda_min(cones, p) > 0.0) {
      z = p;
      return finish(PrimalInterior{std::move(p)});
    }

    // Convex step; eta is supported on block `chosen` only.
    VectorXd diff = z - p;
    const double dsq = diff.squaredNorm();
    if (std::sqrt(dsq) <= kDegenerateStep * (znorm + p.norm())) {
      throw Error(ErrorCode::DegenerateStep, "basic step: z and p coincide");
    }
    const double alpha = -p.dot(diff) / dsq;
    y *= alpha;
    y.segment(off, eta_i.size()) += (1.0 - alpha) * eta_i;
    VectorXd z_next = alpha * z + (1.0 - alpha) * p;

    const double before = 1.0 / (znorm * znorm);
    const double after_sq = z_next.squaredNorm();
    const double after = after_sq > 0.0 ? 1.0 / after_sq : std::numeric_limits<double>::infinity();
    const double progress = after - before;
    out.min_progress = std::min(out.min_progress, progress);
    if (progress < 0.5 - opts.progress_slack) {
      throw Error(ErrorCode::ProgressViolated,
                  "basic procedure: 1/|z|^2 grew by only " + std::to_string(progress));
    }
    z = std::move(z_next);
    ++out.iterations;
  }
}

}  // namespace socrescale
