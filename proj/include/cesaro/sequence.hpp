#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

/// Positions in a sequence are 1-based, as in (x_n)_{n>=1}.
using Index = std::int64_t;

/// Closed integer interval [first, last].
struct Run {
  Index first = 1;
  Index last = 0;

  Index size() const { return last >= first ? last - first + 1 : 0; }
  friend bool operator==(const Run&, const Run&) = default;
};

/// A set of positive integers, held either as a membership predicate or as a
/// sorted list of pairwise disjoint runs.
class IndicatorSet {
 public:
  using Predicate = std::function<bool(Index)>;

  static IndicatorSet from_predicate(std::string name, Predicate contains);

  /// Throws ParameterError unless the runs are nonempty, positive, sorted and
  /// pairwise disjoint.
  static IndicatorSet from_runs(std::string name, std::vector<Run> runs);

  /// Finite set given by its elements; duplicates are merged.
  static IndicatorSet from_elements(std::string name, std::vector<Index> elements);

  bool contains(Index n) const;

  /// #(A ∩ [1, n]).
  std::int64_t count_up_to(Index n) const;

  const std::string& name() const { return name_; }
  bool has_runs() const { return predicate_ == nullptr; }
  std::span<const Run> runs() const { return runs_; }

 private:
  IndicatorSet() = default;

  std::string name_;
  Predicate predicate_;
  std::vector<Run> runs_;
};

struct Parameter {
  std::string name;
  double value = 0.0;
};

/// Deterministic map n -> x_n over the positive integers.
///
/// A source is an immutable value; copies share the underlying generator and
/// may be evaluated concurrently. Finite sources (file tables, seeded random
/// draws) carry a length and raise DomainError past it.
class SequenceSource {
 public:
  using Generator = std::function<double(Index)>;

  SequenceSource(std::string kind, std::vector<Parameter> parameters, Generator generator,
                 std::optional<double> declared_bound = std::nullopt,
                 std::optional<Index> length = std::nullopt,
                 std::optional<IndicatorSet> indicator = std::nullopt);

  /// x_n. Throws DomainError for n < 1 or n past the length of a finite source.
  double operator()(Index n) const;

  const std::string& kind() const { return impl_->kind; }
  const std::vector<Parameter>& parameters() const { return impl_->parameters; }
  std::optional<double> declared_bound() const { return impl_->declared_bound; }
  std::optional<Index> length() const { return impl_->length; }

  /// The underlying set when the source is the indicator of one.
  const IndicatorSet* indicator() const {
    return impl_->indicator ? &*impl_->indicator : nullptr;
  }

 private:
  struct Impl {
    std::string kind;
    std::vector<Parameter> parameters;
    Generator generator;
    std::optional<double> declared_bound;
    std::optional<Index> length;
    std::optional<IndicatorSet> indicator;
  };
  std::shared_ptr<const Impl> impl_;
};

double eval(const SequenceSource& src, Index n);

/// "kind(name=value,...)", used as the source label in reports.
std::string describe(const SequenceSource& src);

/// max_{1<=n<=N} |x_n|.
double sup_abs_prefix(const SequenceSource& src, Index N);

/// θ for an analysis over [1, N]: the declared bound when present, otherwise
/// the observed prefix supremum.
double bound_or_prefix_sup(const SequenceSource& src, Index N);

// Membership predicates of the named constructions.

/// +1 if 2^k <= n < 3·2^(k-1) for some k >= 1, else -1.
double counterexample_sign(Index n);

/// n ∈ A_s = ∪_{m>=1} {2^m + ⌊s·2^(m-1)⌋ + t : t = 1..2^(m-1)}.
bool a_s_member(double s, Index n);

/// n ∈ ∪_{m>=1} {2^m + 1, ..., 2^m + m}.
bool paper_example_member(Index n);

// Generators.

SequenceSource constant(double c);

/// 1, 0, 1, 0, ... (indicator of the odd numbers).
SequenceSource alternating();

SequenceSource counterexample();

SequenceSource a_s(double s);

SequenceSource paper_example();

SequenceSource indicator(IndicatorSet set);

/// n ≡ residue (mod modulus), as an indicator sequence.
SequenceSource multiples(Index modulus, Index residue = 0);

/// x_n = pattern[(n - 1) mod pattern.size()].
SequenceSource periodic(std::vector<double> pattern);

/// Finite table; x_n = values[n - 1].
SequenceSource from_values(std::vector<double> values, std::string kind = "values");

/// One decimal real per line; blank lines and lines starting with '#' are
/// skipped. Throws ParseError naming the offending line.
SequenceSource from_file(const std::filesystem::path& path);

/// Seeded uniform draws in [-bound, bound] for n = 1..length.
///
/// x_n = bound·(2u - 1), where u is the top 53 bits of
/// splitmix64(seed + n·0x9E3779B97F4A7C15) scaled to [0, 1). Counter-based,
/// so any index is evaluated in O(1) and the stream is stable across runs and
/// platforms.
SequenceSource random_bounded(std::uint64_t seed, double bound, Index length);

/// x_n - ell; declared bound θ + |ell|.
SequenceSource shifted(const SequenceSource& src, double ell);

/// factor·x_n; declared bound |factor|·θ.
SequenceSource scaled(const SequenceSource& src, double factor);

}  // namespace cesaro
