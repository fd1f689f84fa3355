#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cesaro/analysis.hpp"
#include "cesaro/density.hpp"
#include "cesaro/partition.hpp"
#include "cesaro/sequence.hpp"
#include "cesaro/summability.hpp"

namespace cesaro {

/// Shortest decimal string that reads back to the same double; '.' separator,
/// no grouping.
std::string format_real(double value);

// Schema tags embedded under the "schema" key of every JSON document.
inline constexpr const char* kMeanSeriesSchema = "cesaro.mean-series/1";
inline constexpr const char* kBlockSeriesSchema = "cesaro.block-series/1";
inline constexpr const char* kPartitionSchema = "cesaro.partition/1";
inline constexpr const char* kDensitySchema = "cesaro.density/1";
inline constexpr const char* kTheoremSchema = "cesaro.theorem/1";
inline constexpr const char* kCounterexampleSchema = "cesaro.counterexample/1";
inline constexpr const char* kW1NormSchema = "cesaro.w1-norm/1";

/// Sequence file format: one value per line for n = 1..N.
void write_sequence(std::ostream& out, const SequenceSource& src, Index N);

void write_csv(std::ostream& out, const MeanSeries& series);
void write_csv(std::ostream& out, const BlockMeanSeries& series);
/// j, lo, hi, weight for j = 1..partition.blocks().
void write_csv(std::ostream& out, const GeometricPartition& partition);
void write_csv(std::ostream& out, const DensityReport& report);

nlohmann::json generator_json(const SequenceSource& src);
nlohmann::json to_json(const LimitEstimate& estimate);

/// `label` names the series ("cesaro" or "strong-cesaro").
nlohmann::json to_json(const MeanSeries& series, const SequenceSource& src,
                       const std::string& label);
nlohmann::json to_json(const BlockMeanSeries& series, const SequenceSource& src);
nlohmann::json to_json(const GeometricPartition& partition);
nlohmann::json to_json(const DensityReport& report, const std::string& set_name);
nlohmann::json to_json(const TheoremReport& report);
nlohmann::json to_json(const CounterexampleReport& report);

}  // namespace cesaro
