#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace socrescale {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class BlockKind { HalfLine, SecondOrder };

struct Block {
  BlockKind kind = BlockKind::HalfLine;
  Index dim = 1;

  static Block half_line() { return {BlockKind::HalfLine, 1}; }
  static Block second_order(Index d) { return {BlockKind::SecondOrder, d}; }

  friend bool operator==(const Block&, const Block&) = default;
};

/// Direct product of half-lines and second-order cones.
///
/// Block i occupies the contiguous coordinates [offset(i), offset(i) + dim(i)).
/// For a second-order block, coordinate 0 of the slice is the center axis and
/// the remaining coordinates are the rotational part.
class ConeStructure {
 public:
  ConeStructure() = default;
  explicit ConeStructure(std::vector<Block> blocks);

  /// Parses "soc:3,halfline,soc:2" (also accepts "h" / "l" / "lin" for half-lines).
  static ConeStructure parse(const std::string& spec);
  std::string to_string() const;

  Index num_blocks() const { return static_cast<Index>(blocks_.size()); }
  Index dim() const { return total_dim_; }
  const Block& block(Index i) const { return blocks_[static_cast<std::size_t>(i)]; }
  const std::vector<Block>& blocks() const { return blocks_; }
  Index offset(Index i) const { return offsets_[static_cast<std::size_t>(i)]; }
  Index block_dim(Index i) const { return block(i).dim; }
  Index max_block_dim() const;

  /// Block i of a vector conforming to this structure.
  template <typename Derived>
  auto segment(Eigen::DenseBase<Derived>& x, Index i) const {
    return x.segment(offset(i), block_dim(i));
  }
  template <typename Derived>
  auto segment(const Eigen::DenseBase<Derived>& x, Index i) const {
    return x.segment(offset(i), block_dim(i));
  }

  /// Appends the blocks of `other` after the blocks of this structure.
  ConeStructure concat(const ConeStructure& other) const;

  friend bool operator==(const ConeStructure& a, const ConeStructure& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<Block> blocks_;
  std::vector<Index> offsets_;
  Index total_dim_ = 0;
};

using ConstBlockRef = Eigen::Ref<const VectorXd>;

// Per-block spectral quantities. A half-line block has a single eigenvalue x.
double block_lambda_min(BlockKind kind, const ConstBlockRef& x);
double block_lambda_max(BlockKind kind, const ConstBlockRef& x);
double block_det(BlockKind kind, const ConstBlockRef& x);

double lambda_min(const ConeStructure& cones, const ConstBlockRef& x);
double lambda_max(const ConeStructure& cones, const ConstBlockRef& x);
double det_block(const ConeStructure& cones, const ConstBlockRef& x, Index i);
double determinant(const ConeStructure& cones, const ConstBlockRef& x);

VectorXd identity(const ConeStructure& cones);

// Tolerances are always supplied by the caller; tol >= 0.
bool is_member(const ConeStructure& cones, const ConstBlockRef& x, double tol);
bool is_interior(const ConeStructure& cones, const ConstBlockRef& x, double tol);

double inf_norm(const ConstBlockRef& x);

}  // namespace socrescale
