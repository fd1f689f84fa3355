#include "cesaro/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "cesaro/errors.hpp"

namespace cesaro {
namespace {

void require_window(double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw ParameterError("window fraction must lie in (0, 1]");
  }
}

void require_tol(double tol) {
  if (!(tol > 0.0)) throw ParameterError("tol must be positive");
}

LimitEstimate band_over(std::span<const double> values, std::size_t begin, double window_fraction,
                        double tol) {
  LimitEstimate est;
  est.window_fraction = window_fraction;
  est.window_begin = begin;
  est.window_end = values.size();
  est.tol = tol;
  if (begin >= values.size()) return est;  // inconclusive
  const auto [lo, hi] = std::minmax_element(values.begin() + static_cast<std::ptrdiff_t>(begin),
                                            values.end());
  est.tail_min = *lo;
  est.tail_max = *hi;
  if (est.width() <= 2.0 * tol) {
    est.verdict = Verdict::converged;
    est.value = 0.5 * (est.tail_min + est.tail_max);
  } else {
    est.verdict = Verdict::oscillating;
  }
  return est;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> sorted_bases(std::span<const double> bases) {
  if (bases.empty()) throw ParameterError("at least one base is required");
  std::vector<double> out(bases.begin(), bases.end());
  for (double a : out) validate_alpha(a);
  std::sort(out.begin(), out.end());
  return out;
}

BlockMeanSeries truncated_block_means(const SequenceSource& src, double alpha, Index N,
                                      std::int64_t max_blocks) {
  auto series = completed_block_means(src, alpha, N, Normalization::real_length);
  if (max_blocks > 0 && static_cast<std::int64_t>(series.blocks.size()) > max_blocks) {
    series.blocks.resize(static_cast<std::size_t>(max_blocks));
  }
  return series;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::converged:
      return "converged";
    case Verdict::oscillating:
      return "oscillating";
    case Verdict::inconclusive:
      break;
  }
  return "inconclusive";
}

bool LimitEstimate::converged_to(double ell, double t) const {
  if (verdict == Verdict::inconclusive) return false;
  return width() <= 2.0 * t && std::abs(0.5 * (tail_min + tail_max) - ell) <= t;
}

LimitEstimate tail_band(std::span<const double> series, double window_fraction, double tol) {
  require_window(window_fraction);
  require_tol(tol);
  const auto size = series.size();
  const auto count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(size))));
  const auto begin = size >= count ? size - count : 0;
  return band_over(series, size == 0 ? 0 : begin, window_fraction, tol);
}

LimitEstimate tail_band(const MeanSeries& series, double window_fraction, double tol) {
  require_window(window_fraction);
  require_tol(tol);
  const auto N = static_cast<double>(series.size());
  const auto first_n =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((1.0 - window_fraction) * N)));
  return band_over(series.means, first_n - 1, window_fraction, tol);
}

LimitEstimate tail_band(const BlockMeanSeries& series, double window_fraction, double tol) {
  const auto values = series.defined_values();
  return tail_band(std::span<const double>(values), window_fraction, tol);
}

TheoremReport check_theorem1(const SequenceSource& src, std::span<const double> bases, Index N,
                             const TheoremOptions& options) {
  require_tol(options.tol);
  require_window(options.mean_window);
  require_window(options.block_window);
  const auto grid = sorted_bases(bases);

  TheoremReport report;
  report.theorem = "cesaro-iff-all-bases";
  report.source = describe(src);
  report.N = N;
  report.tol = options.tol;
  report.cesaro = tail_band(cesaro_means(src, N), options.mean_window, options.tol);

  std::vector<BlockMeanSeries> series(grid.size());
  auto run = [&](std::size_t i) {
    series[i] = truncated_block_means(src, grid[i], N, options.max_blocks);
  };
  if (options.parallel && grid.size() > 1) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < grid.size(); ++i) jobs.push_back(std::async(std::launch::async, run, i));
    for (auto& job : jobs) job.get();
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) run(i);
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    BaseResult result;
    result.alpha = grid[i];
    result.blocks = static_cast<std::int64_t>(series[i].blocks.size());
    result.band = tail_band(series[i], options.block_window, options.tol);
    report.bases.push_back(result);
  }

  const auto& cesaro = report.cesaro;
  if (cesaro.verdict == Verdict::converged) {
    const double ell = cesaro.value;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (report.bases[i].band.converged_to(ell, options.tol)) continue;
      if (report.consistent) report.witness = series[i];
      report.consistent = false;
      report.notes.push_back("Cesaro means converge to " + format_number(ell) +
                             " but block means for alpha=" + format_number(grid[i]) +
                             " do not converge to it");
    }
    return report;
  }

  bool all_converged = true;
  bool common_limit = true;
  for (const auto& b : report.bases) {
    all_converged = all_converged && b.band.verdict == Verdict::converged;
  }
  if (all_converged) {
    const double first = report.bases.front().band.value;
    for (const auto& b : report.bases) {
      common_limit = common_limit && std::abs(b.band.value - first) <= options.tol;
    }
  }
  if (cesaro.verdict == Verdict::inconclusive) {
    report.notes.push_back("Cesaro tail window is empty; nothing to compare");
  } else if (all_converged && common_limit) {
    report.notes.push_back(
        grid.size() == 1
            ? "block means converge for the single tested base while Cesaro means oscillate: "
              "one base does not suffice for signed sequences"
            : "block means converge for every tested base while Cesaro means oscillate: a "
              "finite set of bases does not certify Cesaro convergence");
  }
  return report;
}

TheoremReport check_theorem1(const SequenceSource& src, std::span<const double> bases, Index N,
                             std::int64_t J, double tol) {
  TheoremOptions options;
  options.tol = tol;
  options.max_blocks = J;
  return check_theorem1(src, bases, N, options);
}

TheoremReport check_theorem2(const SequenceSource& src, double alpha, Index N,
                             const TheoremOptions& options) {
  require_tol(options.tol);
  validate_alpha(alpha);
  if (N < 1) throw ParameterError("N must be >= 1");
  for (Index n = 1; n <= N; ++n) {
    const double x = src(n);
    if (x < 0.0) {
      throw PreconditionError("sequence has a negative term x_" + std::to_string(n) + " = " +
                              format_number(x) + "; the single-base check needs x_n >= 0");
    }
  }

  TheoremReport report;
  report.theorem = "nonnegative-cesaro-zero-iff-one-base";
  report.source = describe(src);
  report.N = N;
  report.tol = options.tol;
  report.cesaro = tail_band(cesaro_means(src, N), options.mean_window, options.tol);

  auto series = truncated_block_means(src, alpha, N, options.max_blocks);
  BaseResult result;
  result.alpha = alpha;
  result.blocks = static_cast<std::int64_t>(series.blocks.size());
  result.band = tail_band(series, options.block_window, options.tol);
  report.bases.push_back(result);

  // For x >= 0 the block mean over I_{α,k} is at most α/(α-1) times the
  // Cesàro mean at ι_{k+1} - 1, and the converse direction loses a constant
  // factor as well; both slacks are applied to the target side.
  const double tol = options.tol;
  const double forward_tol = 5.0 * tol;
  const double backward_tol = tol * std::max(5.0, alpha / (alpha - 1.0));
  const bool block_zero = result.band.converged_to(0.0, tol);
  const bool cesaro_zero = report.cesaro.converged_to(0.0, tol);

  if (block_zero && !report.cesaro.converged_to(0.0, forward_tol)) {
    report.consistent = false;
    report.notes.push_back("block means tend to 0 but Cesaro means do not");
  }
  if (cesaro_zero && !result.band.converged_to(0.0, backward_tol)) {
    report.consistent = false;
    report.notes.push_back("Cesaro means tend to 0 but block means do not");
  }
  if (!report.consistent) {
    report.witness = std::move(series);
  } else {
    report.notes.push_back(block_zero ? "both block and Cesaro means tend to 0"
                           : cesaro_zero
                               ? "Cesaro means tend to 0; block means within the widened bound"
                               : "neither block nor Cesaro means tend to 0");
  }
  return report;
}

TheoremReport check_theorem2(const SequenceSource& src, double alpha, Index N, std::int64_t J,
                             double tol) {
  TheoremOptions options;
  options.tol = tol;
  options.max_blocks = J;
  return check_theorem2(src, alpha, N, options);
}

CounterexampleReport counterexample_demo(Index N, double window_fraction) {
  if (N < 2) throw ParameterError("N must be >= 2");
  const auto src = counterexample();
  CounterexampleReport report;
  report.N = N;

  const auto blocks = completed_block_means(src, 2.0, N);
  report.completed_blocks = static_cast<std::int64_t>(blocks.blocks.size());
  for (const auto& rec : blocks.blocks) {
    if (rec.j == 1) {
      report.first_block_mean = rec.value;
    } else {
      report.max_abs_block_mean = std::max(report.max_abs_block_mean, std::abs(rec.value));
    }
  }

  const auto means = cesaro_means(src, N);
  report.cesaro = tail_band(means, window_fraction, 0.01);
  report.limsup_estimate = report.cesaro.tail_max;
  report.liminf_estimate = report.cesaro.tail_min;

  for (int k = 1; k < 62; ++k) {
    const Index n = 3 * (Index{1} << k);
    if (n > N) break;
    report.at_three_pow.push_back({n, means.at(n)});
  }
  for (int k = 1; k < 62; ++k) {
    const Index n = 3 * (Index{1} << (k - 1)) - 1;
    if (n > N) break;
    report.at_local_maxima.push_back({n, means.at(n)});
  }
  return report;
}

}  // namespace cesaro
