#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "cesaro/errors.hpp"
#include "cesaro/sequence.hpp"
#include "oracles.hpp"

using namespace cesaro;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("eval examples") {
  CHECK(eval(constant(3.0), 7) == 3.0);
  CHECK(eval(indicator(IndicatorSet::from_elements("s", {2, 4})), 3) == 0.0);
  CHECK(eval(indicator(IndicatorSet::from_elements("s", {2, 4})), 4) == 1.0);
  CHECK(eval(counterexample(), 5) == 1.0);
}

TEST_CASE("index 0 and negative indices are domain errors") {
  CHECK_THROWS_AS(eval(constant(1.0), 0), DomainError);
  CHECK_THROWS_AS(eval(counterexample(), -3), DomainError);
  CHECK_THROWS_AS(counterexample_sign(0), DomainError);
  CHECK_THROWS_AS(paper_example_member(0), DomainError);
}

TEST_CASE("counterexample_sign") {
  CHECK(counterexample_sign(1) == -1.0);
  CHECK(counterexample_sign(2) == 1.0);
  CHECK(counterexample_sign(3) == -1.0);
  CHECK(counterexample_sign(6) == -1.0);
  CHECK(counterexample_sign(4) == 1.0);

  const auto x = oracle::counterexample_prefix(Index{1} << 21);
  for (Index n = 1; n < (Index{1} << 21); ++n) {
    REQUIRE(counterexample_sign(n) == x[static_cast<std::size_t>(n)]);
  }

  SUBCASE("each dyadic block splits into equal halves") {
    for (int k = 1; k <= 20; ++k) {
      Index plus = 0;
      Index minus = 0;
      for (Index n = Index{1} << k; n < (Index{2} << k); ++n) {
        (counterexample_sign(n) > 0 ? plus : minus) += 1;
      }
      CHECK(plus == (Index{1} << (k - 1)));
      CHECK(minus == (Index{1} << (k - 1)));
    }
  }
}

TEST_CASE("a_s_member") {
  CHECK(a_s_member(0.0, 3));
  CHECK_FALSE(a_s_member(0.0, 4));
  CHECK(a_s_member(0.0, 5));
  CHECK(a_s_member(1.0, (1 << 10) + (1 << 9) + 1));
  CHECK_FALSE(a_s_member(1.0, (1 << 10) + (1 << 9)));
  CHECK_THROWS_AS(a_s_member(-0.25, 3), ParameterError);
  CHECK_THROWS_AS(a_s_member(1.5, 3), ParameterError);
  CHECK_THROWS_AS(a_s(2.0), ParameterError);

  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0, 0.375}) {
    const Index N = Index{1} << 14;
    const auto elements = oracle::a_s_elements(s, N);
    for (Index n = 1; n <= N; ++n) {
      REQUIRE_MESSAGE(a_s_member(s, n) == (elements.count(n) == 1), "s=" << s << " n=" << n);
    }
  }
}

TEST_CASE("A_s dyadic block counts") {
  // For s < 1 every run sits inside its own dyadic block. For s = 1 the run
  // of block m ends at 2^(m+1), so block m = 1 ([2,4)) holds no element and
  // every later block borrows exactly one element from its predecessor.
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (int m = 1; m <= 16; ++m) {
      Index count = 0;
      for (Index n = Index{1} << m; n < (Index{2} << m); ++n) count += a_s_member(s, n) ? 1 : 0;
      const Index expected = (s == 1.0 && m == 1) ? 0 : (Index{1} << (m - 1));
      CHECK_MESSAGE(count == expected, "s=" << s << " m=" << m);
    }
  }
}

TEST_CASE("paper_example_member") {
  CHECK(paper_example_member(3));
  CHECK_FALSE(paper_example_member(8));
  CHECK(paper_example_member(10));
  CHECK_FALSE(paper_example_member(1));
  CHECK_FALSE(paper_example_member(2));

  const Index N = Index{1} << 16;
  const auto elements = oracle::paper_example_elements(N);
  for (Index n = 1; n <= N; ++n) REQUIRE(paper_example_member(n) == (elements.count(n) == 1));
}

TEST_CASE("sup_abs_prefix") {
  CHECK(sup_abs_prefix(constant(-2.0), 100) == 2.0);
  CHECK(sup_abs_prefix(counterexample(), 10) == 1.0);
  CHECK(sup_abs_prefix(indicator(IndicatorSet::from_runs("empty", {})), 50) == 0.0);
  CHECK_THROWS_AS(sup_abs_prefix(constant(1.0), 0), ParameterError);
}

TEST_CASE("declared bounds dominate the prefix supremum") {
  const std::vector<SequenceSource> sources = {
      constant(-0.7),        alternating(),        counterexample(),
      a_s(0.5),              paper_example(),      multiples(3),
      periodic({1, -2, 0.5}), random_bounded(3, 2.5, 5000),
      shifted(counterexample(), -1.0), scaled(alternating(), -3.0)};
  for (const auto& src : sources) {
    REQUIRE(src.declared_bound().has_value());
    for (Index N : {1, 10, 1000, 5000}) {
      CHECK(sup_abs_prefix(src, N) <= *src.declared_bound());
    }
  }
}

TEST_CASE("IndicatorSet runs") {
  const auto set = IndicatorSet::from_runs("runs", {{2, 4}, {10, 10}, {20, 29}});
  CHECK(set.has_runs());
  CHECK_FALSE(set.contains(1));
  CHECK(set.contains(2));
  CHECK(set.contains(4));
  CHECK_FALSE(set.contains(5));
  CHECK(set.contains(10));
  CHECK(set.contains(25));
  CHECK_FALSE(set.contains(30));
  CHECK(set.count_up_to(3) == 2);
  CHECK(set.count_up_to(100) == 14);

  CHECK_THROWS_AS(IndicatorSet::from_runs("bad", {{5, 8}, {8, 9}}), ParameterError);
  CHECK_THROWS_AS(IndicatorSet::from_runs("bad", {{5, 8}, {1, 2}}), ParameterError);
  CHECK_THROWS_AS(IndicatorSet::from_runs("bad", {{0, 2}}), ParameterError);
  CHECK_THROWS_AS(IndicatorSet::from_runs("bad", {{3, 2}}), ParameterError);

  const auto merged = IndicatorSet::from_elements("e", {7, 3, 4, 5, 3, 9});
  REQUIRE(merged.runs().size() == 3);
  CHECK(merged.runs()[0] == Run{3, 5});
  CHECK(merged.runs()[1] == Run{7, 7});
  CHECK(merged.runs()[2] == Run{9, 9});
}

TEST_CASE("run list agrees with the predicate form") {
  std::mt19937_64 rng(11);
  std::vector<Index> elements;
  for (int i = 0; i < 300; ++i) elements.push_back(static_cast<Index>(rng() % 2000) + 1);
  const auto runs = IndicatorSet::from_elements("r", elements);
  const std::set<Index> lookup(elements.begin(), elements.end());
  const auto pred =
      IndicatorSet::from_predicate("p", [&](Index n) { return lookup.count(n) == 1; });
  for (Index n = 1; n <= 2100; ++n) {
    REQUIRE(runs.contains(n) == pred.contains(n));
    REQUIRE(runs.count_up_to(n) == pred.count_up_to(n));
  }
}

TEST_CASE("file-backed sequences") {
  const auto path = write_temp("cesaro_seq_basic.txt", "1\n-1\n0.5\n");
  const auto src = from_file(path);
  CHECK(src(1) == 1.0);
  CHECK(src(2) == -1.0);
  CHECK(src(3) == 0.5);
  CHECK(src.length() == 3);
  CHECK_THROWS_AS(src(4), DomainError);

  SUBCASE("comments, blanks, signs and exponents") {
    const auto p = write_temp("cesaro_seq_comments.txt",
                              "# header\n+2.5\n\n  -3e-2  \r\n# trailing comment\n7\n");
    const auto s = from_file(p);
    CHECK(s.length() == 3);
    CHECK(s(1) == 2.5);
    CHECK(s(2) == -0.03);
    CHECK(s(3) == 7.0);
  }

  SUBCASE("parse errors name the line") {
    const auto p = write_temp("cesaro_seq_bad.txt", "1\n2\n# ok\nthree\n");
    try {
      from_file(p);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    CHECK_THROWS_AS(from_file(write_temp("cesaro_seq_nan.txt", "nan\n")), ParseError);
    CHECK_THROWS_AS(from_file(write_temp("cesaro_seq_junk.txt", "1.5x\n")), ParseError);
  }

  CHECK_THROWS(from_file(std::filesystem::temp_directory_path() / "cesaro_missing_file.txt"));
}

TEST_CASE("random_bounded") {
  const auto a = random_bounded(42, 1.0, 1000);
  const auto b = random_bounded(42, 1.0, 1000);
  CHECK(bit_equal(a(10), a(10)));
  CHECK(bit_equal(a(10), b(10)));
  CHECK_FALSE(a(10) == random_bounded(43, 1.0, 1000)(10));
  for (Index n = 1; n <= 1000; ++n) {
    REQUIRE(a(n) >= -1.0);
    REQUIRE(a(n) <= 1.0);
  }
  CHECK_THROWS_AS(a(1001), DomainError);
  CHECK_THROWS_AS(random_bounded(1, 0.0, 10), ParameterError);
  CHECK_THROWS_AS(random_bounded(1, 1.0, 0), ParameterError);

  // Roughly uniform: the mean of many draws is near 0.
  const auto wide = random_bounded(5, 1.0, 200000);
  double sum = 0.0;
  for (Index n = 1; n <= 200000; ++n) sum += wide(n);
  CHECK(std::abs(sum / 200000.0) < 0.01);
}

TEST_CASE("shifted and scaled") {
  const auto zero = shifted(constant(5.0), 5.0);
  CHECK(zero(3) == 0.0);
  CHECK(zero.declared_bound() == 10.0);

  const auto same = shifted(alternating(), 0.0);
  for (Index n = 1; n <= 20; ++n) CHECK(same(n) == alternating()(n));

  const auto lifted = shifted(counterexample(), -1.0);
  for (Index n = 1; n <= 4096; ++n) {
    const double v = lifted(n);
    REQUIRE((v == 0.0 || v == 2.0));
  }
  CHECK(lifted(2) == 2.0);
  CHECK(lifted(1) == 0.0);
  CHECK(lifted.declared_bound() == 2.0);

  const auto s = scaled(periodic({1.0, -0.5}), -2.0);
  CHECK(s(1) == -2.0);
  CHECK(s(2) == 1.0);
  CHECK(s.declared_bound() == 2.0);
}

TEST_CASE("sources are deterministic and safe to share across threads") {
  const std::vector<SequenceSource> sources = {counterexample(), a_s(0.25), paper_example(),
                                               random_bounded(9, 3.0, 1 << 16),
                                               periodic({0.1, 0.2, 0.3})};
  std::atomic<int> mismatches{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (const auto& src : sources) {
        for (Index n = 1; n <= (1 << 16); n += 7) {
          if (!bit_equal(src(n), src(n))) ++mismatches;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(mismatches == 0);

  std::vector<double> first;
  for (Index n = 1; n <= 512; ++n) first.push_back(sources[3](n));
  for (Index n = 1; n <= 512; ++n) CHECK(bit_equal(first[static_cast<std::size_t>(n - 1)], sources[3](n)));
}

TEST_CASE("describe") {
  CHECK(describe(counterexample()) == "counterexample");
  CHECK(describe(a_s(0.5)) == "a_s(s=0.5)");
  CHECK(describe(shifted(constant(1.0), 0.25)) == "constant(c=1,shift=0.25)");
}
