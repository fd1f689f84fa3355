#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <utility>
#include <vector>

#include "cesaro/errors.hpp"
#include "cesaro/summability.hpp"
#include "oracles.hpp"

using namespace cesaro;

namespace {

const double kGrid[] = {1.2, 1.5, 2.0, std::numbers::e, 3.0, 10.0};

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("compensated summation") {
  CompensatedSumD s;
  s += 1e16;
  s += 1.0;
  s += -1e16;
  CHECK(s.value() == 1.0);

  CompensatedSumD tenth;
  for (int i = 0; i < 1000000; ++i) tenth += 0.1;
  CHECK(std::abs(tenth.value() - 100000.0) <= 1e-9);
}

TEST_CASE("cesaro_means") {
  const auto c = cesaro_means(constant(2.5), 1000);
  for (Index n = 1; n <= 1000; ++n) REQUIRE(c.at(n) == 2.5);

  const auto alt = cesaro_means(alternating(), 2000);
  for (Index m = 1; m <= 1000; ++m) REQUIRE(alt.at(2 * m) == 0.5);

  const auto ce = cesaro_means(counterexample(), 24);
  CHECK(ce.at(12) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(ce.at(24) == 0.25);
  CHECK(ce.at(1) == -1.0);

  CHECK_THROWS_AS(cesaro_means(constant(1.0), 0), ParameterError);
  CHECK_THROWS_AS(cesaro_means(from_values({1.0, 2.0}), 3), DomainError);
}

TEST_CASE("cesaro_means matches a long double reference") {
  const std::vector<SequenceSource> sources = {random_bounded(7, 1.0, 300000),
                                               shifted(random_bounded(8, 1e3, 300000), 999.5),
                                               counterexample(), periodic({0.1, -0.3, 0.7})};
  for (const auto& src : sources) {
    const auto means = cesaro_means(src, 300000);
    long double ref = 0.0L;
    for (Index n = 1; n <= 300000; ++n) {
      ref += src(n);
      const long double scaled = static_cast<long double>(means.at(n)) * n;
      REQUIRE(std::abs(scaled - ref) <= 1e-12L * std::max(1.0L, std::abs(ref)) + 1e-12L * n);
    }
  }
}

TEST_CASE("|a_n| is bounded by the prefix supremum") {
  const auto src = random_bounded(21, 4.0, 20000);
  const auto means = cesaro_means(src, 20000);
  double sup = 0.0;
  for (Index n = 1; n <= 20000; ++n) {
    sup = std::max(sup, std::abs(src(n)));
    REQUIRE(std::abs(means.at(n)) <= sup);
  }
}

TEST_CASE("strong_cesaro_means") {
  const auto z = strong_cesaro_means(constant(1.75), 1.75, 500);
  for (Index n = 1; n <= 500; ++n) REQUIRE(z.at(n) == 0.0);

  const auto ones = strong_cesaro_means(counterexample(), 0.0, 4096);
  for (Index n = 1; n <= 4096; ++n) REQUIRE(ones.at(n) == 1.0);

  const Index N = Index{1} << 16;
  const auto pe = strong_cesaro_means(paper_example(), 0.0, N);
  const auto count = static_cast<double>(oracle::paper_example_elements(N).size());
  CHECK(count == 120.0);  // 1 + 2 + ... + 15
  CHECK(pe.at(N) == count / static_cast<double>(N));
  CHECK(pe.at(N) < 0.01);
}

TEST_CASE("nonnegative sources: Cesàro and strong Cesàro coincide bit for bit") {
  const std::vector<SequenceSource> sources = {alternating(), a_s(0.25), paper_example(),
                                               multiples(7, 3), shifted(counterexample(), -1.0),
                                               shifted(random_bounded(4, 1.0, 50000), -1.0),
                                               periodic({0.2, 0.0, 1.3})};
  for (const auto& src : sources) {
    const auto a = cesaro_means(src, 50000);
    const auto b = strong_cesaro_means(src, 0.0, 50000);
    for (Index n = 1; n <= 50000; ++n) REQUIRE(bit_equal(a.at(n), b.at(n)));
  }
}

TEST_CASE("w1_norm_partial") {
  CHECK(w1_norm_partial(constant(1.0), 10) == 1.0);
  CHECK(w1_norm_partial(constant(0.0), 10) == 0.0);
  CHECK(w1_norm_partial(counterexample(), 12) == 1.0);
  CHECK_THROWS_AS(w1_norm_partial(constant(1.0), 0), ParameterError);

  // Paper example: block m holds m members, so the block averages are m/2^m
  // and the sup is attained at m = 1 and m = 2 (both 1/2).
  CHECK(w1_norm_partial(paper_example(), 12) == 0.5);

  SUBCASE("monotone in M") {
    const auto src = random_bounded(99, 2.0, 1 << 20);
    double prev = 0.0;
    for (int M = 1; M <= 18; ++M) {
      const double v = w1_norm_partial(src, M);
      REQUIRE(v >= prev);
      prev = v;
    }
  }

  SUBCASE("accumulator tracks completed blocks") {
    W1NormAccumulator acc;
    for (int n = 1; n <= 14; ++n) acc.push(n == 3 ? 4.0 : 0.0);
    CHECK(acc.completed_blocks() == 2);  // [2,4) and [4,8)
    CHECK(acc.value() == 2.0);
  }
}

TEST_CASE("block_means") {
  SUBCASE("sign sequence at base 2 has zero blocks from j = 2 on") {
    const auto s = block_means(counterexample(), 2.0, 20);
    REQUIRE(s.blocks.size() == 20);
    CHECK(s.blocks[0].value == -1.0);
    for (std::size_t i = 1; i < s.blocks.size(); ++i) REQUIRE(s.blocks[i].value == 0.0);
  }

  SUBCASE("A_1/2 at base 2") {
    const auto s = block_means(a_s(0.5), 2.0, 18);
    for (std::size_t i = 1; i < s.blocks.size(); ++i) REQUIRE(s.blocks[i].value == 0.5);
  }

  SUBCASE("constants") {
    for (auto [alpha, J] : {std::pair{1.1, 120}, {1.5, 30}, {2.0, 20}, {3.0, 12}}) {
      const auto s = block_means(constant(-0.375), alpha, J);
      for (const auto& b : s.blocks) {
        if (b.defined) REQUIRE(b.value == -0.375);
      }
    }
  }

  SUBCASE("empty blocks are undefined with zero weight") {
    const auto s = block_means(constant(1.0), 1.1, 10);
    REQUIRE(s.blocks.size() == 10);
    CHECK(s.blocks[0].defined);
    CHECK(s.blocks[0].weight == 1);
    for (std::size_t i = 1; i < 7; ++i) {
      CHECK_FALSE(s.blocks[i].defined);
      CHECK(s.blocks[i].weight == 0);
      CHECK(s.blocks[i].value == 0.0);
    }
    CHECK(s.blocks[7].defined);
  }

  SUBCASE("real-length normalization") {
    const auto s = block_means(constant(1.0), 2.0, 10, Normalization::real_length);
    for (const auto& b : s.blocks) CHECK(b.value == 1.0);
    const auto t = block_means(constant(1.0), 1.5, 5, Normalization::real_length);
    // Block 5 = {6, 7}, real length 1.5^5 - 1.5^4 = 2.53125.
    CHECK(t.blocks[4].value == doctest::Approx(2.0 / 2.53125).epsilon(1e-14));
  }

  CHECK_THROWS_AS(block_means(constant(1.0), 1.0, 3), ParameterError);
  CHECK_THROWS_AS(block_means(constant(1.0), 2.0, 0), ParameterError);
}

TEST_CASE("block sums match brute force over power-defined blocks") {
  const auto src = random_bounded(17, 1.0, 1 << 20);
  for (double alpha : kGrid) {
    const auto series = completed_block_means(src, alpha, 500000);
    std::vector<long double> sums(series.blocks.size() + 2, 0.0L);
    std::vector<Index> counts(series.blocks.size() + 2, 0);
    const Index end = [&] {
      Index e = 0;
      for (const auto& b : series.blocks) e += b.weight;
      return e;
    }();
    bool ambiguous = false;
    for (Index n = 1; n <= end; ++n) {
      if (oracle::near_power(alpha, n)) ambiguous = true;
      const auto j = static_cast<std::size_t>(oracle::block_of(alpha, n));
      REQUIRE(j <= series.blocks.size());
      sums[j] += src(n);
      counts[j] += 1;
    }
    if (ambiguous) continue;
    for (const auto& b : series.blocks) {
      const auto j = static_cast<std::size_t>(b.j);
      REQUIRE(b.weight == counts[j]);
      if (b.defined) {
        REQUIRE(std::abs(b.value - static_cast<double>(sums[j] / counts[j])) <= 1e-12);
      }
    }
  }
}

TEST_CASE("block means stay within [-θ, θ]") {
  const auto src = random_bounded(5, 0.8, 1 << 20);
  for (double alpha : kGrid) {
    for (const auto& b : completed_block_means(src, alpha, 1 << 20).blocks) {
      REQUIRE(std::abs(b.value) <= 0.8);
    }
  }
}

TEST_CASE("completed_block_means emits only finished blocks") {
  const auto s = completed_block_means(counterexample(), 2.0, 100);
  REQUIRE(s.blocks.size() == 6);  // [64,128) is not finished at 100
  CHECK(s.blocks.back().j == 6);
  CHECK(completed_block_means(constant(1.0), 2.0, 1).blocks.size() == 1);
  CHECK(completed_block_means(constant(1.0), 10.0, 8).blocks.empty());
}

TEST_CASE("decomposition identity") {
  CHECK(decomposition_residual(constant(3.0), 2.0, 100) <= 1e-9);
  CHECK(decomposition_residual(constant(-1.25), 2.0, 100) <= 1e-9);

  const Index n = 100000;
  CHECK(decomposition_residual(counterexample(), 1.5, n) <= 1e-9 * n);
  CHECK(decomposition_residual(random_bounded(7, 1.0, 20000), 3.0, 12345) <= 1e-9 * 12345);

  for (double alpha : {1.1, 1.2, 2.0, std::numbers::e, 10.0}) {
    for (Index m : {1, 2, 3, 7, 64, 1000, 65537}) {
      CHECK(decomposition_residual(random_bounded(3, 2.0, 70000), alpha, m) <= 1e-9 * m * 2.0);
    }
  }
  CHECK_THROWS_AS(decomposition_residual(constant(1.0), 2.0, 0), DomainError);
  CHECK_THROWS_AS(decomposition_residual(constant(1.0), 0.5, 10), ParameterError);
}

TEST_CASE("telescoping identity") {
  const auto c = telescoping_residual(constant(4.0), 2.0, 10);
  REQUIRE(c.has_value());
  CHECK(*c <= 1e-9 * 1024 * 4.0);

  const auto ce = telescoping_residual(counterexample(), 2.0, 12);
  REQUIRE(ce.has_value());
  CHECK(*ce <= 1e-9 * 4096);

  const auto r = telescoping_residual(random_bounded(1, 2.0, 10000), 1.5, 20);
  REQUIRE(r.has_value());
  CHECK(*r <= 1e-9 * iota(1.5, 21) * 2.0);

  CHECK_FALSE(telescoping_residual(constant(1.0), 1.1, 2).has_value());

  const auto all = telescoping_residuals(random_bounded(2, 1.0, 1 << 21), 1.2, 70);
  REQUIRE(all.size() == 70);
  const auto p = GeometricPartition::with_blocks(1.2, 70);
  for (std::int64_t k = 1; k <= 70; ++k) {
    const auto& res = all[static_cast<std::size_t>(k - 1)];
    REQUIRE(res.has_value() == (p.weight(k) > 0));
    if (res) REQUIRE(*res <= 1e-9 * static_cast<double>(p.iota(k + 1) - 1));
  }
}

TEST_CASE("normalization strings") {
  CHECK(parse_normalization("cardinality") == Normalization::cardinality);
  CHECK(parse_normalization("real-length") == Normalization::real_length);
  CHECK(std::string(to_string(Normalization::real_length)) == "real-length");
  CHECK_THROWS_AS(parse_normalization("bogus"), ParameterError);
}
