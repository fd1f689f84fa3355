#pragma once

#include <cstdint>
#include <optional>

#include "cesaro/sequence.hpp"

namespace cesaro {

/// Finite-horizon estimate of the lower and upper asymptotic density.
///
/// `lower` and `upper` are the extremes of #(A ∩ [1,n]) / n over the trailing
/// window n ∈ [window_start, horizon]; `argmin_n` and `argmax_n` are the first
/// indices attaining them.
struct DensityReport {
  Index horizon = 0;
  std::int64_t count = 0;
  double window_fraction = 0.5;
  Index window_start = 1;
  double lower = 0.0;
  double upper = 0.0;
  Index argmin_n = 0;
  Index argmax_n = 0;
};

struct DensityPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// #(A ∩ [1, N]).
std::int64_t counting(const IndicatorSet& set, Index N);

DensityReport density_band(const IndicatorSet& set, Index N, double window_fraction = 0.5);

/// #(A ∩ I_{α,j}) / #I_{α,j}; nullopt for an empty block.
std::optional<double> block_density(const IndicatorSet& set, double alpha, std::int64_t j);

/// (1/(2+s), 2/(3+s)): the lower and upper density of A_s.
DensityPair a_s_density_formulas(double s);

}  // namespace cesaro
