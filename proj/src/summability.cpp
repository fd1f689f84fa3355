#include "cesaro/summability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cesaro/errors.hpp"

namespace cesaro {

const char* to_string(Normalization mode) {
  return mode == Normalization::cardinality ? "cardinality" : "real-length";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "cardinality") return Normalization::cardinality;
  if (text == "real-length" || text == "real_length") return Normalization::real_length;
  throw ParameterError("unknown normalization '" + std::string(text) + "'");
}

std::vector<double> BlockMeanSeries::defined_values() const {
  std::vector<double> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) {
    if (b.defined) out.push_back(b.value);
  }
  return out;
}

// BlockMeanAccumulator

BlockMeanAccumulator::BlockMeanAccumulator(const GeometricPartition& partition,
                                           Normalization mode)
    : partition_(&partition), mode_(mode) {}

void BlockMeanAccumulator::push(double x) {
  block_sum_ += x;
  ++count_;
  flush();
}

void BlockMeanAccumulator::flush() {
  // Block j is complete once every index below ι_{j+1} has been pushed.
  while (next_block_ <= partition_->blocks() && partition_->iota(next_block_ + 1) <= count_ + 1) {
    BlockRecord rec;
    rec.j = next_block_;
    rec.weight = partition_->weight(next_block_);
    rec.sum = block_sum_.value();
    rec.defined = rec.weight > 0;
    if (rec.defined) {
      const double denom = mode_ == Normalization::cardinality
                               ? static_cast<double>(rec.weight)
                               : partition_->real_length(next_block_);
      rec.value = rec.sum / denom;
    }
    completed_.push_back(rec);
    block_sum_.reset();
    ++next_block_;
  }
}

// W1NormAccumulator

void W1NormAccumulator::push(double x) {
  ++count_;
  if (count_ < 2) return;  // the dyadic blocks start at m = 1
  block_sum_ += std::abs(x);
  // Block m = [2^m, 2^{m+1}) is complete when count_ == 2^{m+1} - 1.
  if (((count_ + 1) & count_) == 0) {
    const int m = completed_ + 1;
    norm_ = std::max(norm_, block_sum_.value() / std::ldexp(1.0, m));
    block_sum_.reset();
    completed_ = m;
  }
}

// Operations

namespace {

void require_horizon(Index N) {
  if (N < 1) throw ParameterError("N must be >= 1, got " + std::to_string(N));
}

}  // namespace

MeanSeries cesaro_means(const SequenceSource& src, Index N) {
  require_horizon(N);
  MeanSeries out;
  out.means.reserve(static_cast<std::size_t>(N));
  CesaroAccumulator acc;
  for (Index n = 1; n <= N; ++n) {
    acc.push(src(n));
    out.means.push_back(acc.mean());
  }
  return out;
}

MeanSeries strong_cesaro_means(const SequenceSource& src, double ell, Index N) {
  require_horizon(N);
  MeanSeries out;
  out.means.reserve(static_cast<std::size_t>(N));
  CesaroAccumulator acc;
  for (Index n = 1; n <= N; ++n) {
    acc.push(std::abs(src(n) - ell));
    out.means.push_back(acc.mean());
  }
  return out;
}

double w1_norm_partial(const SequenceSource& src, int M) {
  if (M < 1 || M > 62) throw ParameterError("M must lie in [1, 62]");
  const Index last = (Index{1} << (M + 1)) - 1;
  W1NormAccumulator acc;
  for (Index n = 1; n <= last; ++n) acc.push(src(n));
  return acc.value();
}

BlockMeanSeries block_means(const SequenceSource& src, double alpha, std::int64_t J,
                            Normalization mode) {
  const auto partition = GeometricPartition::with_blocks(alpha, J);
  BlockMeanAccumulator acc(partition, mode);
  const Index end = partition.iota(J + 1);
  for (Index n = 1; n < end; ++n) acc.push(src(n));
  return {alpha, mode, acc.take_completed()};
}

BlockMeanSeries completed_block_means(const SequenceSource& src, double alpha, Index N,
                                      Normalization mode) {
  require_horizon(N);
  const auto partition = GeometricPartition::covering(alpha, N);
  const auto J = partition.completed_blocks(N);
  if (J < 1) return {alpha, mode, {}};
  BlockMeanAccumulator acc(partition, mode);
  const Index end = partition.iota(J + 1);
  for (Index n = 1; n < end; ++n) acc.push(src(n));
  auto records = acc.take_completed();
  records.resize(static_cast<std::size_t>(J));
  return {alpha, mode, std::move(records)};
}

double decomposition_residual(const SequenceSource& src, double alpha, Index n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const auto partition = GeometricPartition::covering(alpha, n);
  const auto k = partition.block_index_of(n);
  const Index tail_start = partition.iota(k);

  CesaroAccumulator cesaro;
  BlockMeanAccumulator blocks(partition, Normalization::cardinality);
  CompensatedSumD tail;
  for (Index i = 1; i <= n; ++i) {
    const double x = src(i);
    cesaro.push(x);
    if (i < tail_start) {
      blocks.push(x);
    } else {
      tail += x;
    }
  }

  CompensatedSumD rhs;
  for (const auto& rec : blocks.completed()) {
    if (rec.j >= k) break;
    if (rec.defined) rhs += static_cast<double>(rec.weight) * rec.value;
  }
  rhs += tail.value();
  return std::abs(static_cast<double>(n) * cesaro.mean() - rhs.value());
}

std::vector<std::optional<double>> telescoping_residuals(const SequenceSource& src, double alpha,
                                                         std::int64_t K) {
  const auto partition = GeometricPartition::with_blocks(alpha, K);
  const Index end = partition.iota(K + 1);

  // a_m for m = 0..end-1, with the empty prefix a_0 = 0.
  std::vector<double> means(static_cast<std::size_t>(end), 0.0);
  CesaroAccumulator cesaro;
  BlockMeanAccumulator blocks(partition, Normalization::cardinality);
  for (Index n = 1; n < end; ++n) {
    const double x = src(n);
    cesaro.push(x);
    blocks.push(x);
    means[static_cast<std::size_t>(n)] = cesaro.mean();
  }

  auto prefix = [&](Index m) { return means[static_cast<std::size_t>(m)] * static_cast<double>(m); };

  std::vector<std::optional<double>> out;
  out.reserve(static_cast<std::size_t>(K));
  for (const auto& rec : blocks.completed()) {
    if (!rec.defined) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const Index lo = partition.iota(rec.j);
    const Index hi = partition.iota(rec.j + 1);
    const double lhs = static_cast<double>(hi - lo) * rec.value;
    out.emplace_back(std::abs(lhs - (prefix(hi - 1) - prefix(lo - 1))));
  }
  return out;
}

std::optional<double> telescoping_residual(const SequenceSource& src, double alpha,
                                           std::int64_t k) {
  return telescoping_residuals(src, alpha, k).back();
}

}  // namespace cesaro
