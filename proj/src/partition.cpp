#include "cesaro/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cesaro/errors.hpp"

namespace cesaro {
namespace {

// 2^63 as a double; anything at or above no longer fits Index.
constexpr double kIndexLimit = 9223372036854775808.0;

double snap(double p) {
  const double nearest = std::round(p);
  if (std::abs(p - nearest) <= kSnapTolerance * std::max(1.0, std::abs(p))) return nearest;
  return p;
}

void require_block(std::int64_t j) {
  if (j < 1) throw ParameterError("block index must be >= 1, got " + std::to_string(j));
}

}  // namespace

void validate_alpha(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 1.0 + kAlphaMargin)) {
    throw ParameterError("base alpha must be finite and greater than 1 (got " +
                         std::to_string(alpha) + ")");
  }
}

GeometricPartition::GeometricPartition(double alpha) : alpha_(alpha) {
  validate_alpha(alpha);
  iota_.push_back(1);
  powers_.push_back(1.0);
}

void GeometricPartition::extend_to(std::size_t boundary_count) {
  if (static_cast<std::int64_t>(boundary_count) > kMaxBoundaries) {
    throw RangeError("partition would need more than " + std::to_string(kMaxBoundaries) +
                     " blocks; base is too close to 1 for this horizon");
  }
  while (iota_.size() < boundary_count) {
    running_power_ *= alpha_;
    const double p = snap(running_power_);
    const double c = std::ceil(p);
    if (!(c < kIndexLimit)) {
      throw RangeError("block boundary " + std::to_string(iota_.size() + 1) +
                       " exceeds the 64-bit index range");
    }
    iota_.push_back(std::max(static_cast<Index>(c), iota_.back()));
    powers_.push_back(p);
  }
}

GeometricPartition GeometricPartition::with_blocks(double alpha, std::int64_t blocks) {
  require_block(blocks);
  GeometricPartition partition(alpha);
  partition.extend_to(static_cast<std::size_t>(blocks) + 1);
  return partition;
}

GeometricPartition GeometricPartition::covering(double alpha, Index n) {
  if (n < 1) throw DomainError("index must be >= 1");
  GeometricPartition partition(alpha);
  partition.extend_to(2);
  while (partition.iota_.back() <= n) partition.extend_to(partition.iota_.size() + 1);
  return partition;
}

Index GeometricPartition::iota(std::int64_t j) const {
  require_block(j);
  if (j > blocks() + 1) {
    throw RangeError("boundary " + std::to_string(j) + " is outside the cached partition");
  }
  return iota_[static_cast<std::size_t>(j - 1)];
}

double GeometricPartition::power(std::int64_t j) const {
  require_block(j);
  if (j > blocks() + 1) {
    throw RangeError("boundary " + std::to_string(j) + " is outside the cached partition");
  }
  return powers_[static_cast<std::size_t>(j - 1)];
}

BlockBounds GeometricPartition::bounds(std::int64_t j) const {
  require_block(j);
  if (j > blocks()) {
    throw RangeError("block " + std::to_string(j) + " is outside the cached partition");
  }
  const auto i = static_cast<std::size_t>(j - 1);
  return {iota_[i], iota_[i + 1]};
}

std::int64_t GeometricPartition::block_index_of(Index n) const {
  if (n < 1) throw DomainError("index must be >= 1");
  if (n >= iota_.back()) {
    throw RangeError("index " + std::to_string(n) + " is beyond the cached partition");
  }
  const auto it = std::upper_bound(iota_.begin(), iota_.end(), n);
  return static_cast<std::int64_t>(it - iota_.begin());
}

std::int64_t GeometricPartition::completed_blocks(Index n) const {
  // Block j is complete when ι_{j+1} - 1 <= n.
  const auto it = std::upper_bound(iota_.begin(), iota_.end(), n + 1);
  return std::max<std::int64_t>(0, static_cast<std::int64_t>(it - iota_.begin()) - 1);
}

Index iota(double alpha, std::int64_t j) {
  require_block(j);
  if (j == 1) {
    validate_alpha(alpha);
    return 1;
  }
  return GeometricPartition::with_blocks(alpha, j - 1).iota(j);
}

BlockBounds block_bounds(double alpha, std::int64_t j) {
  return GeometricPartition::with_blocks(alpha, j).bounds(j);
}

Index weight(double alpha, std::int64_t j) { return block_bounds(alpha, j).weight(); }

std::int64_t block_index_of(double alpha, Index n) {
  return GeometricPartition::covering(alpha, n).block_index_of(n);
}

}  // namespace cesaro
