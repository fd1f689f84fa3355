#pragma once

#include <cstdint>
#include <vector>

#include "cesaro/sequence.hpp"

namespace cesaro {

/// Bases must exceed 1 by more than this.
inline constexpr double kAlphaMargin = 1e-12;

/// α^(j-1) within this relative distance of an integer is snapped to it
/// before the ceiling is taken.
inline constexpr double kSnapTolerance = 1e-12;

/// Cap on cached boundaries per partition (bases very close to 1).
inline constexpr std::int64_t kMaxBoundaries = std::int64_t{1} << 24;

/// Throws ParameterError unless alpha > 1 + kAlphaMargin and alpha is finite.
void validate_alpha(double alpha);

/// Block j is the half-open integer range [lo, hi); empty when lo == hi.
struct BlockBounds {
  Index lo = 1;
  Index hi = 1;

  bool empty() const { return lo == hi; }
  Index weight() const { return hi - lo; }
  friend bool operator==(const BlockBounds&, const BlockBounds&) = default;
};

/// Partition of the positive integers into I_{α,j} = [α^(j-1), α^j) ∩ N.
///
/// Boundaries ι_j = ⌈α^(j-1)⌉ are produced by repeated multiplication with a
/// snap-to-integer guard and forced nondecreasing, so block j is exactly
/// [ι_j, ι_{j+1}) and the weights telescope without rounding. A partition is
/// immutable once built; it covers a fixed number of blocks chosen at
/// construction.
class GeometricPartition {
 public:
  /// Covers blocks 1..blocks.
  static GeometricPartition with_blocks(double alpha, std::int64_t blocks);

  /// Covers every block needed to reach index n, i.e. up to block_index_of(n).
  static GeometricPartition covering(double alpha, Index n);

  double alpha() const { return alpha_; }

  /// Number of blocks covered.
  std::int64_t blocks() const { return static_cast<std::int64_t>(iota_.size()) - 1; }

  /// ι_j for 1 <= j <= blocks() + 1.
  Index iota(std::int64_t j) const;

  /// α^(j-1) after snapping, for 1 <= j <= blocks() + 1.
  double power(std::int64_t j) const;

  BlockBounds bounds(std::int64_t j) const;
  Index weight(std::int64_t j) const { return bounds(j).weight(); }

  /// α^j - α^(j-1), the real length of block j.
  double real_length(std::int64_t j) const { return power(j + 1) - power(j); }

  /// The unique k with ι_k <= n < ι_{k+1}; requires n < iota(blocks() + 1).
  std::int64_t block_index_of(Index n) const;

  /// Number of blocks lying entirely inside [1, n].
  std::int64_t completed_blocks(Index n) const;

 private:
  explicit GeometricPartition(double alpha);
  void extend_to(std::size_t boundary_count);

  double alpha_;
  std::vector<Index> iota_;     // iota_[j-1] = ι_j
  std::vector<double> powers_;  // powers_[j-1] = α^(j-1), snapped
  double running_power_ = 1.0;  // unsnapped α^(size-1)
};

/// ⌈α^(j-1)⌉ with the snap guard.
Index iota(double alpha, std::int64_t j);

BlockBounds block_bounds(double alpha, std::int64_t j);

/// #I_{α,j} = ι_{j+1} - ι_j.
Index weight(double alpha, std::int64_t j);

std::int64_t block_index_of(double alpha, Index n);

}  // namespace cesaro
