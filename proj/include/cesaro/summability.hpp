#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cesaro/compensated_sum.hpp"
#include "cesaro/partition.hpp"
#include "cesaro/sequence.hpp"

namespace cesaro {

/// Relative tolerance for the exact identities, scaled by n·θ.
inline constexpr double kIdentityTolerance = 1e-9;

inline double identity_tolerance(Index n, double theta) {
  return kIdentityTolerance * static_cast<double>(n) * theta;
}

/// How a block sum is turned into a block mean.
enum class Normalization {
  cardinality,  ///< divide by #I_{α,j}
  real_length,  ///< divide by α^j - α^(j-1)
};

const char* to_string(Normalization mode);
Normalization parse_normalization(std::string_view text);

/// Running mean (1/n)Σ x_i, one value at a time.
class CesaroAccumulator {
 public:
  void push(double x) {
    sum_ += x;
    ++count_;
  }
  Index count() const { return count_; }
  double sum() const { return sum_.value(); }
  double mean() const { return count_ == 0 ? 0.0 : sum_.value() / static_cast<double>(count_); }

 private:
  CompensatedSumD sum_;
  Index count_ = 0;
};

/// a_1..a_N.
struct MeanSeries {
  std::vector<double> means;

  Index size() const { return static_cast<Index>(means.size()); }
  /// a_n, 1-based.
  double at(Index n) const { return means.at(static_cast<std::size_t>(n - 1)); }
};

struct BlockRecord {
  std::int64_t j = 0;
  Index weight = 0;
  double sum = 0.0;
  double value = 0.0;    ///< block mean; 0 when undefined
  bool defined = false;  ///< false exactly when weight == 0
};

struct BlockMeanSeries {
  double alpha = 2.0;
  Normalization mode = Normalization::cardinality;
  std::vector<BlockRecord> blocks;

  /// Defined block means in order of j.
  std::vector<double> defined_values() const;
};

/// Streams x_1, x_2, ... and emits a record each time a block of the
/// partition is complete. Empty blocks are emitted as soon as their
/// boundary is passed.
class BlockMeanAccumulator {
 public:
  BlockMeanAccumulator(const GeometricPartition& partition, Normalization mode);

  void push(double x);

  Index count() const { return count_; }
  std::span<const BlockRecord> completed() const { return completed_; }
  std::vector<BlockRecord> take_completed() { return std::move(completed_); }

 private:
  void flush();

  const GeometricPartition* partition_;
  Normalization mode_;
  std::int64_t next_block_ = 1;
  CompensatedSumD block_sum_;
  Index count_ = 0;
  std::vector<BlockRecord> completed_;
};

/// sup over completed dyadic blocks m >= 1 of (1/2^m) Σ_{2^m<=k<2^{m+1}} |x_k|.
class W1NormAccumulator {
 public:
  void push(double x);

  double value() const { return norm_; }
  int completed_blocks() const { return completed_; }

 private:
  Index count_ = 0;
  int completed_ = 0;
  CompensatedSumD block_sum_;
  double norm_ = 0.0;
};

/// a_n = (1/n) Σ_{i<=n} x_i for n = 1..N, in one pass.
MeanSeries cesaro_means(const SequenceSource& src, Index N);

/// (1/n) Σ_{i<=n} |x_i - ell| for n = 1..N.
MeanSeries strong_cesaro_means(const SequenceSource& src, double ell, Index N);

double w1_norm_partial(const SequenceSource& src, int M);

/// Block means for j = 1..J in one pass over [1, ι_{J+1}).
BlockMeanSeries block_means(const SequenceSource& src, double alpha, std::int64_t J,
                            Normalization mode = Normalization::cardinality);

/// Block means of every block completed within [1, N].
BlockMeanSeries completed_block_means(const SequenceSource& src, double alpha, Index N,
                                      Normalization mode = Normalization::cardinality);

/// |n·a_n - (Σ_{j<k} w_j b_j + Σ_{i ∈ I_{α,k}, i<=n} x_i)| where n ∈ I_{α,k}.
/// Zero in exact arithmetic.
double decomposition_residual(const SequenceSource& src, double alpha, Index n);

/// |(ι_{k+1} - ι_k) b_k - (a_{ι_{k+1}-1}(ι_{k+1}-1) - a_{ι_k-1}(ι_k-1))|, or
/// nullopt when block k is empty.
std::optional<double> telescoping_residual(const SequenceSource& src, double alpha,
                                           std::int64_t k);

/// telescoping_residual for k = 1..K, sharing one pass.
std::vector<std::optional<double>> telescoping_residuals(const SequenceSource& src, double alpha,
                                                         std::int64_t K);

}  // namespace cesaro
