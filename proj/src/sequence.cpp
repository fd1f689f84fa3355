#include "cesaro/sequence.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "cesaro/errors.hpp"

namespace cesaro {
namespace {

void require_index(Index n) {
  if (n < 1) {
    throw DomainError("sequence index must be >= 1, got " + std::to_string(n));
  }
}

void require_unit_interval(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ParameterError("s must lie in [0, 1]");
  }
}

// floor(log2 n) for n >= 1.
int floor_log2(Index n) { return std::bit_width(static_cast<std::uint64_t>(n)) - 1; }

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace

// IndicatorSet

IndicatorSet IndicatorSet::from_predicate(std::string name, Predicate contains) {
  if (!contains) throw ParameterError("indicator predicate is empty");
  IndicatorSet set;
  set.name_ = std::move(name);
  set.predicate_ = std::move(contains);
  return set;
}

IndicatorSet IndicatorSet::from_runs(std::string name, std::vector<Run> runs) {
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].first < 1 || runs[i].last < runs[i].first) {
      throw ParameterError("run " + std::to_string(i) + " is empty or not positive");
    }
    if (i > 0 && runs[i].first <= runs[i - 1].last) {
      throw ParameterError("runs must be sorted and pairwise disjoint (run " + std::to_string(i) +
                           ")");
    }
  }
  IndicatorSet set;
  set.name_ = std::move(name);
  set.runs_ = std::move(runs);
  return set;
}

IndicatorSet IndicatorSet::from_elements(std::string name, std::vector<Index> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<Run> runs;
  for (Index e : elements) {
    if (e < 1) throw ParameterError("set elements must be positive");
    if (!runs.empty() && runs.back().last + 1 == e) {
      runs.back().last = e;
    } else {
      runs.push_back({e, e});
    }
  }
  return from_runs(std::move(name), std::move(runs));
}

bool IndicatorSet::contains(Index n) const {
  if (predicate_) return n >= 1 && predicate_(n);
  auto it = std::upper_bound(runs_.begin(), runs_.end(), n,
                             [](Index v, const Run& r) { return v < r.first; });
  if (it == runs_.begin()) return false;
  return n <= std::prev(it)->last;
}

std::int64_t IndicatorSet::count_up_to(Index n) const {
  std::int64_t count = 0;
  if (predicate_) {
    for (Index i = 1; i <= n; ++i) count += predicate_(i) ? 1 : 0;
    return count;
  }
  for (const Run& r : runs_) {
    if (r.first > n) break;
    count += std::min(r.last, n) - r.first + 1;
  }
  return count;
}

// SequenceSource

SequenceSource::SequenceSource(std::string kind, std::vector<Parameter> parameters,
                               Generator generator, std::optional<double> declared_bound,
                               std::optional<Index> length, std::optional<IndicatorSet> indicator)
    : impl_(std::make_shared<const Impl>(Impl{std::move(kind), std::move(parameters),
                                              std::move(generator), declared_bound, length,
                                              std::move(indicator)})) {
  if (declared_bound && !(*declared_bound >= 0.0)) {
    throw ParameterError("declared bound must be nonnegative");
  }
}

double SequenceSource::operator()(Index n) const {
  require_index(n);
  if (impl_->length && n > *impl_->length) {
    throw DomainError("index " + std::to_string(n) + " is past the end of a " + impl_->kind +
                      " sequence of length " + std::to_string(*impl_->length));
  }
  return impl_->generator(n);
}

double eval(const SequenceSource& src, Index n) { return src(n); }

std::string describe(const SequenceSource& src) {
  std::string out = src.kind();
  if (src.parameters().empty()) return out;
  out += '(';
  bool first = true;
  for (const auto& p : src.parameters()) {
    if (!first) out += ',';
    first = false;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, p.value);
    out += p.name + '=' + std::string(buf, res.ptr);
  }
  out += ')';
  return out;
}

double sup_abs_prefix(const SequenceSource& src, Index N) {
  if (N < 1) throw ParameterError("N must be >= 1");
  double sup = 0.0;
  for (Index n = 1; n <= N; ++n) sup = std::max(sup, std::abs(src(n)));
  return sup;
}

double bound_or_prefix_sup(const SequenceSource& src, Index N) {
  if (auto theta = src.declared_bound()) return *theta;
  return sup_abs_prefix(src, N);
}

// Constructions

double counterexample_sign(Index n) {
  require_index(n);
  const int k = floor_log2(n);
  if (k < 1) return -1.0;
  // 2^k <= n always holds here, so only the upper end decides.
  return n < 3 * (Index{1} << (k - 1)) ? 1.0 : -1.0;
}

bool a_s_member(double s, Index n) {
  require_unit_interval(s);
  require_index(n);
  const int top = floor_log2(n);
  // The m-th run starts above 2^m and ends at most at 2^(m+1) (reached when
  // s = 1), so n can only belong to run top or run top - 1.
  for (int m = std::max(top - 1, 1); m <= top; ++m) {
    const Index half = Index{1} << (m - 1);
    const auto offset = static_cast<Index>(std::floor(s * static_cast<double>(half)));
    const Index first = (Index{1} << m) + offset + 1;
    if (n >= first && n < first + half) return true;
  }
  return false;
}

bool paper_example_member(Index n) {
  require_index(n);
  const int m = floor_log2(n);
  if (m < 1) return false;
  const Index offset = n - (Index{1} << m);
  return offset >= 1 && offset <= m;
}

// Generators

SequenceSource constant(double c) {
  return SequenceSource("constant", {{"c", c}}, [c](Index) { return c; }, std::abs(c));
}

SequenceSource alternating() {
  auto set = IndicatorSet::from_predicate("odd", [](Index n) { return n % 2 == 1; });
  return SequenceSource(
      "alternating", {}, [](Index n) { return n % 2 == 1 ? 1.0 : 0.0; }, 1.0, std::nullopt,
      std::move(set));
}

SequenceSource counterexample() {
  return SequenceSource("counterexample", {}, counterexample_sign, 1.0);
}

SequenceSource a_s(double s) {
  require_unit_interval(s);
  auto set = IndicatorSet::from_predicate("a_s", [s](Index n) { return a_s_member(s, n); });
  return SequenceSource(
      "a_s", {{"s", s}}, [s](Index n) { return a_s_member(s, n) ? 1.0 : 0.0; }, 1.0,
      std::nullopt, std::move(set));
}

SequenceSource paper_example() {
  auto set = IndicatorSet::from_predicate("paper-example", paper_example_member);
  return SequenceSource(
      "paper-example", {}, [](Index n) { return paper_example_member(n) ? 1.0 : 0.0; }, 1.0,
      std::nullopt, std::move(set));
}

SequenceSource indicator(IndicatorSet set) {
  auto shared = std::make_shared<const IndicatorSet>(set);
  return SequenceSource(
      "indicator", {}, [shared](Index n) { return shared->contains(n) ? 1.0 : 0.0; }, 1.0,
      std::nullopt, std::move(set));
}

SequenceSource multiples(Index modulus, Index residue) {
  if (modulus < 1) throw ParameterError("modulus must be >= 1");
  residue = ((residue % modulus) + modulus) % modulus;
  auto set = IndicatorSet::from_predicate(
      "multiples", [modulus, residue](Index n) { return n % modulus == residue; });
  return SequenceSource(
      "multiples",
      {{"modulus", static_cast<double>(modulus)}, {"residue", static_cast<double>(residue)}},
      [modulus, residue](Index n) { return n % modulus == residue ? 1.0 : 0.0; }, 1.0,
      std::nullopt, std::move(set));
}

SequenceSource periodic(std::vector<double> pattern) {
  if (pattern.empty()) throw ParameterError("periodic pattern is empty");
  double bound = 0.0;
  std::vector<Parameter> params;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    bound = std::max(bound, std::abs(pattern[i]));
    params.push_back({"p" + std::to_string(i + 1), pattern[i]});
  }
  auto table = std::make_shared<const std::vector<double>>(std::move(pattern));
  return SequenceSource(
      "periodic", std::move(params),
      [table](Index n) { return (*table)[static_cast<std::size_t>(n - 1) % table->size()]; },
      bound);
}

SequenceSource from_values(std::vector<double> values, std::string kind) {
  double bound = 0.0;
  for (double v : values) bound = std::max(bound, std::abs(v));
  const auto length = static_cast<Index>(values.size());
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  return SequenceSource(
      std::move(kind), {{"length", static_cast<double>(length)}},
      [table](Index n) { return (*table)[static_cast<std::size_t>(n - 1)]; }, bound, length);
}

SequenceSource from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sequence file " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    double v = 0.0;
    const auto* begin = text.data();
    const auto* end = begin + text.size();
    // from_chars rejects a leading '+', which is still a decimal real.
    if (*begin == '+' && end - begin > 1 && begin[1] != '-') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
      throw ParseError(line_no, "not a decimal real: '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) throw ParseError(line_no, "value is not finite");
    values.push_back(v);
  }
  return from_values(std::move(values), "file");
}

SequenceSource random_bounded(std::uint64_t seed, double bound, Index length) {
  if (!(bound > 0.0) || !std::isfinite(bound)) throw ParameterError("bound must be positive");
  if (length < 1) throw ParameterError("length must be >= 1");
  return SequenceSource(
      "random",
      {{"seed", static_cast<double>(seed)}, {"bound", bound}, {"length", static_cast<double>(length)}},
      [seed, bound](Index n) {
        const std::uint64_t bits =
            splitmix64(seed + static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL);
        const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
        return bound * (2.0 * u - 1.0);
      },
      bound, length);
}

SequenceSource shifted(const SequenceSource& src, double ell) {
  auto params = src.parameters();
  params.push_back({"shift", ell});
  std::optional<double> bound;
  if (auto theta = src.declared_bound()) bound = *theta + std::abs(ell);
  return SequenceSource(
      src.kind(), std::move(params), [src, ell](Index n) { return src(n) - ell; }, bound,
      src.length());
}

SequenceSource scaled(const SequenceSource& src, double factor) {
  auto params = src.parameters();
  params.push_back({"scale", factor});
  std::optional<double> bound;
  if (auto theta = src.declared_bound()) bound = std::abs(factor) * *theta;
  return SequenceSource(
      src.kind(), std::move(params), [src, factor](Index n) { return factor * src(n); }, bound,
      src.length());
}

}  // namespace cesaro
