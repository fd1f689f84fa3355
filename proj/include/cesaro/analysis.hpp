#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/sequence.hpp"
#include "cesaro/summability.hpp"

namespace cesaro {

inline constexpr std::array<double, 6> kDefaultBases = {1.2, 1.5, 2.0, std::numbers::e, 3.0, 10.0};

enum class Verdict { converged, inconclusive, oscillating };

const char* to_string(Verdict verdict);

/// Trailing-window band of a series, a finite stand-in for (liminf, limsup).
///
/// The verdict is `converged` iff tail_max - tail_min <= 2·tol, in which case
/// `value` is the midpoint of the band.
struct LimitEstimate {
  double tail_min = 0.0;
  double tail_max = 0.0;
  double window_fraction = 1.0;
  std::size_t window_begin = 0;  // 0-based positions into the series
  std::size_t window_end = 0;    // one past the last
  double tol = 0.0;
  Verdict verdict = Verdict::inconclusive;
  double value = 0.0;

  double width() const { return tail_max - tail_min; }

  /// True when the band is at most 2·t wide and its midpoint is within t of ell.
  bool converged_to(double ell, double t) const;
};

/// Band over the trailing ⌈window_fraction·size⌉ entries of `series`.
LimitEstimate tail_band(std::span<const double> series, double window_fraction, double tol);

/// Band of a_n over n ∈ [⌈(1 - window_fraction)·N⌉, N].
LimitEstimate tail_band(const MeanSeries& series, double window_fraction, double tol);

/// Band over the trailing fraction of the defined block means; empty blocks
/// are skipped.
LimitEstimate tail_band(const BlockMeanSeries& series, double window_fraction, double tol);

struct TheoremOptions {
  double tol = 0.01;
  /// Trailing window over n for the Cesàro means.
  double mean_window = 0.5;
  /// Trailing window over completed blocks. Blocks are geometric, so a
  /// quarter of them already spans the upper three quarters of log n.
  double block_window = 0.25;
  /// Cap on the number of blocks per base; 0 means every block completed
  /// within [1, N].
  std::int64_t max_blocks = 0;
  bool parallel = true;
};

struct BaseResult {
  double alpha = 2.0;
  std::int64_t blocks = 0;
  LimitEstimate band;
};

struct TheoremReport {
  std::string theorem;
  std::string source;
  Index N = 0;
  double tol = 0.0;
  LimitEstimate cesaro;
  std::vector<BaseResult> bases;  // ascending alpha
  bool consistent = true;
  std::vector<std::string> notes;
  /// Block series of a base that contradicts the equivalence, if any.
  std::optional<BlockMeanSeries> witness;
};

/// Bounded-sequence equivalence over a finite set of bases: Cesàro means
/// converging to ℓ force every base's block means (real-length normalized)
/// to converge to ℓ.
TheoremReport check_theorem1(const SequenceSource& src, std::span<const double> bases, Index N,
                             const TheoremOptions& options = {});

TheoremReport check_theorem1(const SequenceSource& src, std::span<const double> bases, Index N,
                             std::int64_t J, double tol);

/// Single-base equivalence for nonnegative sequences: block means -> 0 iff
/// Cesàro means -> 0. Throws PreconditionError naming the first negative term.
TheoremReport check_theorem2(const SequenceSource& src, double alpha, Index N,
                             const TheoremOptions& options = {});

TheoremReport check_theorem2(const SequenceSource& src, double alpha, Index N, std::int64_t J,
                             double tol);

struct MeanSample {
  Index n = 0;
  double mean = 0.0;
};

/// Base-2 block means against Cesàro means for the ±1 sign sequence.
struct CounterexampleReport {
  Index N = 0;
  std::int64_t completed_blocks = 0;
  double first_block_mean = 0.0;
  /// max |b_j| over completed blocks j >= 2.
  double max_abs_block_mean = 0.0;
  LimitEstimate cesaro;
  double limsup_estimate = 0.0;
  double liminf_estimate = 0.0;
  std::vector<MeanSample> at_three_pow;       // n = 3·2^k
  std::vector<MeanSample> at_local_maxima;    // n = 3·2^(k-1) - 1
};

CounterexampleReport counterexample_demo(Index N, double window_fraction = 0.5);

}  // namespace cesaro
