#include "cesaro/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cesaro/errors.hpp"
#include "cesaro/summability.hpp"

namespace cesaro {

std::int64_t counting(const IndicatorSet& set, Index N) {
  if (N < 1) throw ParameterError("N must be >= 1");
  return set.count_up_to(N);
}

DensityReport density_band(const IndicatorSet& set, Index N, double window_fraction) {
  if (N < 2) throw ParameterError("density horizon must be >= 2, got " + std::to_string(N));
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw ParameterError("window fraction must lie in (0, 1]");
  }
  DensityReport report;
  report.horizon = N;
  report.window_fraction = window_fraction;
  report.window_start = std::max<Index>(
      1, static_cast<Index>(std::ceil((1.0 - window_fraction) * static_cast<double>(N))));

  std::int64_t count = 0;
  bool first = true;
  for (Index n = 1; n <= N; ++n) {
    if (set.contains(n)) ++count;
    if (n < report.window_start) continue;
    const double ratio = static_cast<double>(count) / static_cast<double>(n);
    if (first || ratio < report.lower) {
      report.lower = ratio;
      report.argmin_n = n;
    }
    if (first || ratio > report.upper) {
      report.upper = ratio;
      report.argmax_n = n;
    }
    first = false;
  }
  report.count = count;
  return report;
}

std::optional<double> block_density(const IndicatorSet& set, double alpha, std::int64_t j) {
  const auto series = block_means(indicator(set), alpha, j, Normalization::cardinality);
  const auto& rec = series.blocks.back();
  if (!rec.defined) return std::nullopt;
  return rec.value;
}

DensityPair a_s_density_formulas(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("s must lie in [0, 1]");
  return {1.0 / (2.0 + s), 2.0 / (3.0 + s)};
}

}  // namespace cesaro
