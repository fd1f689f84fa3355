#include "cesaro/serialize.hpp"

#include <charconv>
#include <ostream>

namespace cesaro {

using nlohmann::json;

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_sequence(std::ostream& out, const SequenceSource& src, Index N) {
  for (Index n = 1; n <= N; ++n) out << format_real(src(n)) << '\n';
}

void write_csv(std::ostream& out, const MeanSeries& series) {
  out << "n,a_n\n";
  for (Index n = 1; n <= series.size(); ++n) {
    out << n << ',' << format_real(series.at(n)) << '\n';
  }
}

void write_csv(std::ostream& out, const BlockMeanSeries& series) {
  out << "j,w_j,b_j,defined\n";
  for (const auto& b : series.blocks) {
    out << b.j << ',' << b.weight << ',' << format_real(b.value) << ','
        << (b.defined ? "true" : "false") << '\n';
  }
}

void write_csv(std::ostream& out, const GeometricPartition& partition) {
  out << "j,lo,hi,weight\n";
  for (std::int64_t j = 1; j <= partition.blocks(); ++j) {
    const auto b = partition.bounds(j);
    out << j << ',' << b.lo << ',' << b.hi << ',' << b.weight() << '\n';
  }
}

void write_csv(std::ostream& out, const DensityReport& report) {
  out << "horizon,count,lower,upper,argmin_n,argmax_n\n";
  out << report.horizon << ',' << report.count << ',' << format_real(report.lower) << ','
      << format_real(report.upper) << ',' << report.argmin_n << ',' << report.argmax_n << '\n';
}

json generator_json(const SequenceSource& src) {
  json params = json::object();
  for (const auto& p : src.parameters()) params[p.name] = p.value;
  json out = {{"name", src.kind()}, {"parameters", params}};
  if (auto theta = src.declared_bound()) out["declared_bound"] = *theta;
  return out;
}

json to_json(const LimitEstimate& e) {
  json out = {{"tail_min", e.tail_min},
              {"tail_max", e.tail_max},
              {"window_fraction", e.window_fraction},
              {"window_begin", e.window_begin},
              {"window_end", e.window_end},
              {"tol", e.tol},
              {"verdict", to_string(e.verdict)}};
  if (e.verdict == Verdict::converged) out["value"] = e.value;
  return out;
}

json to_json(const MeanSeries& series, const SequenceSource& src, const std::string& label) {
  return {{"schema", kMeanSeriesSchema},
          {"series", label},
          {"generator", generator_json(src)},
          {"N", series.size()},
          {"values", series.means}};
}

json to_json(const BlockMeanSeries& series, const SequenceSource& src) {
  json blocks = json::array();
  for (const auto& b : series.blocks) {
    blocks.push_back({{"j", b.j}, {"w", b.weight}, {"b", b.value}, {"defined", b.defined}});
  }
  return {{"schema", kBlockSeriesSchema},
          {"generator", generator_json(src)},
          {"alpha", series.alpha},
          {"mode", to_string(series.mode)},
          {"J", series.blocks.size()},
          {"blocks", blocks}};
}

json to_json(const GeometricPartition& partition) {
  json blocks = json::array();
  for (std::int64_t j = 1; j <= partition.blocks(); ++j) {
    const auto b = partition.bounds(j);
    blocks.push_back({{"j", j}, {"lo", b.lo}, {"hi", b.hi}, {"weight", b.weight()}});
  }
  return {{"schema", kPartitionSchema}, {"alpha", partition.alpha()}, {"blocks", blocks}};
}

json to_json(const DensityReport& r, const std::string& set_name) {
  return {{"schema", kDensitySchema},
          {"set", set_name},
          {"horizon", r.horizon},
          {"count", r.count},
          {"window_fraction", r.window_fraction},
          {"lower", r.lower},
          {"upper", r.upper},
          {"argmin_n", r.argmin_n},
          {"argmax_n", r.argmax_n}};
}

json to_json(const TheoremReport& r) {
  json bases = json::array();
  for (const auto& b : r.bases) {
    bases.push_back({{"alpha", b.alpha},
                     {"blocks", b.blocks},
                     {"band", to_json(b.band)},
                     {"verdict", to_string(b.band.verdict)}});
  }
  json out = {{"schema", kTheoremSchema},
              {"theorem", r.theorem},
              {"source", r.source},
              {"N", r.N},
              {"tol", r.tol},
              {"cesaro", to_json(r.cesaro)},
              {"bases", bases},
              {"consistent", r.consistent},
              {"notes", r.notes}};
  if (r.witness) {
    json values = json::array();
    for (const auto& b : r.witness->blocks) {
      if (b.defined) values.push_back({b.j, b.value});
    }
    out["witness"] = {{"alpha", r.witness->alpha}, {"blocks", values}};
  }
  return out;
}

json to_json(const CounterexampleReport& r) {
  auto samples = [](const std::vector<MeanSample>& v) {
    json arr = json::array();
    for (const auto& s : v) arr.push_back({{"n", s.n}, {"a_n", s.mean}});
    return arr;
  };
  return {{"schema", kCounterexampleSchema},
          {"N", r.N},
          {"alpha", 2.0},
          {"completed_blocks", r.completed_blocks},
          {"first_block_mean", r.first_block_mean},
          {"max_abs_block_mean_j_ge_2", r.max_abs_block_mean},
          {"cesaro", to_json(r.cesaro)},
          {"limsup_estimate", r.limsup_estimate},
          {"liminf_estimate", r.liminf_estimate},
          {"at_three_pow", samples(r.at_three_pow)},
          {"at_local_maxima", samples(r.at_local_maxima)}};
}

}  // namespace cesaro
