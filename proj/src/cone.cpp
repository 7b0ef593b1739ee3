#include "socrescale/cone.hpp"

#include "socrescale/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace socrescale {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::ProgressViolated: return "ProgressViolated";
    case ErrorCode::DegenerateStep: return "DegenerateStep";
    case ErrorCode::OuterCapExceeded: return "OuterCapExceeded";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ConeStructure::ConeStructure(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  offsets_.reserve(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    if (b.kind == BlockKind::HalfLine && b.dim != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "half-line block " + std::to_string(i) + " must have dim 1");
    }
    if (b.kind == BlockKind::SecondOrder && b.dim < 2) {
      throw Error(ErrorCode::InvalidArgument,
                  "second-order block " + std::to_string(i) + " must have dim >= 2");
    }
    offsets_.push_back(total_dim_);
    total_dim_ += b.dim;
  }
}

ConeStructure ConeStructure::parse(const std::string& spec) {
  std::vector<Block> blocks;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    std::string lower = item;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "halfline" || lower == "h" || lower == "l" || lower == "lin") {
      blocks.push_back(Block::half_line());
      continue;
    }
    auto colon = lower.find(':');
    if (lower.rfind("soc", 0) == 0 && colon != std::string::npos) {
      Index d = 0;
      try {
        d = std::stol(lower.substr(colon + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad block dimension in '" + item + "'");
      }
      blocks.push_back(Block::second_order(d));
      continue;
    }
    throw Error(ErrorCode::ParseError, "unknown block '" + item + "'");
  }
  if (blocks.empty()) throw Error(ErrorCode::ParseError, "cone specification has no blocks");
  return ConeStructure(std::move(blocks));
}

std::string ConeStructure::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ',';
    out += blocks_[i].kind == BlockKind::HalfLine ? "halfline"
                                                   : "soc:" + std::to_string(blocks_[i].dim);
  }
  return out;
}

Index ConeStructure::max_block_dim() const {
  Index d = 0;
  for (const auto& b : blocks_) d = std::max(d, b.dim);
  return d;
}

ConeStructure ConeStructure::concat(const ConeStructure& other) const {
  std::vector<Block> all = blocks_;
  all.insert(all.end(), other.blocks_.begin(), other.blocks_.end());
  return ConeStructure(std::move(all));
}

double block_lambda_min(BlockKind kind, const ConstBlockRef& x) {
  if (kind == BlockKind::HalfLine) return x(0);
  return x(0) - x.tail(x.size() - 1).norm();
}

double block_lambda_max(BlockKind kind, const ConstBlockRef& x) {
  if (kind == BlockKind::HalfLine) return x(0);
  return x(0) + x.tail(x.size() - 1).norm();
}

double block_det(BlockKind kind, const ConstBlockRef& x) {
  if (kind == BlockKind::HalfLine) return x(0);
  return x(0) * x(0) - x.tail(x.size() - 1).squaredNorm();
}

double lambda_min(const ConeStructure& cones, const ConstBlockRef& x) {
  double v = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < cones.num_blocks(); ++i) {
    v = std::min(v, block_lambda_min(cones.block(i).kind, cones.segment(x, i)));
  }
  return v;
}

double lambda_max(const ConeStructure& cones, const ConstBlockRef& x) {
  double v = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < cones.num_blocks(); ++i) {
    v = std::max(v, block_lambda_max(cones.block(i).kind, cones.segment(x, i)));
  }
  return v;
}

double det_block(const ConeStructure& cones, const ConstBlockRef& x, Index i) {
  return block_det(cones.block(i).kind, cones.segment(x, i));
}

double determinant(const ConeStructure& cones, const ConstBlockRef& x) {
  double d = 1.0;
  for (Index i = 0; i < cones.num_blocks(); ++i) d *= det_block(cones, x, i);
  return d;
}

VectorXd identity(const ConeStructure& cones) {
  VectorXd e = VectorXd::Zero(cones.dim());
  for (Index i = 0; i < cones.num_blocks(); ++i) e(cones.offset(i)) = 1.0;
  return e;
}

bool is_member(const ConeStructure& cones, const ConstBlockRef& x, double tol) {
  return lambda_min(cones, x) >= -tol;
}

bool is_interior(const ConeStructure& cones, const ConstBlockRef& x, double tol) {
  return lambda_min(cones, x) > tol;
}

double inf_norm(const ConstBlockRef& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

}  // namespace socrescale
