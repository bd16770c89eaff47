#include <doctest.h>

#include "dualtaylor/errors.hpp"
#include "dualtaylor/sequence.hpp"

using namespace dualtaylor;

TEST_CASE("formula parsing and evaluation") {
  CHECK(SequenceSpec::formula("n^2").value(7) == 49);
  CHECK(SequenceSpec::formula("2*n").value(21) == 42);
  CHECK(SequenceSpec::formula("n+7").value(1) == 8);
  CHECK(SequenceSpec::formula("n*ilog2(n)+1").value(8) == 25);
  CHECK(SequenceSpec::formula("(n+1)^2 - 1").value(3) == 15);
  CHECK_THROWS_AS(SequenceSpec::formula("n^"), ParseError);
  CHECK_THROWS_AS(SequenceSpec::formula("m+2"), ParseError);
  CHECK_THROWS_AS(SequenceSpec::formula("n^64").value(2), Error);
  CHECK_THROWS_AS(SequenceSpec::formula("n^9").value(1000000), ValidationError);
}

TEST_CASE("table lookup and bounds") {
  const SequenceSpec t = SequenceSpec::table({2, 8, 24});
  CHECK(t.value(1) == 2);
  CHECK(t.value(3) == 24);
  CHECK_THROWS_AS(t.value(4), ValidationError);
  CHECK_THROWS_AS(t.value(0), ValidationError);
  CHECK_THROWS_AS(SequenceSpec::table({}), ValidationError);
}

TEST_CASE("check_ratio: n^2 diverges with ratio n") {
  const RatioReport r = check_ratio(SequenceSpec::formula("n^2"), 1000);
  CHECK(r.sup_ratio == 1000.0);
  CHECK(r.attained_at == 1000);
  CHECK(r.verdict == RatioVerdict::kDiverging);
}

TEST_CASE("check_ratio: bounded sequences stay bounded-so-far") {
  const RatioReport r2n = check_ratio(SequenceSpec::formula("2*n"), 1000);
  CHECK(r2n.sup_ratio == 2.0);
  CHECK(r2n.verdict == RatioVerdict::kBoundedSoFar);

  const RatioReport rn7 = check_ratio(SequenceSpec::formula("n+7"), 10);
  CHECK(rn7.sup_ratio == 8.0);
  CHECK(rn7.attained_at == 1);
  CHECK(rn7.verdict == RatioVerdict::kBoundedSoFar);

  const RatioReport r3n = check_ratio(SequenceSpec::formula("3*n"), 500);
  CHECK(r3n.verdict == RatioVerdict::kBoundedSoFar);
}

TEST_CASE("check_ratio validates the scan") {
  CHECK_THROWS_AS(check_ratio(SequenceSpec::formula("n^2"), 9),
                  ValidationError);
  // Non-monotone table: the error names the first offending index.
  CHECK_THROWS_WITH_AS(
      check_ratio(SequenceSpec::table({1, 5, 4, 9, 11, 12, 13, 14, 15, 16}),
                  10),
      doctest::Contains("index 3"), ValidationError);
  // Formula dipping non-positive.
  CHECK_THROWS_AS(check_ratio(SequenceSpec::formula("n*ilog2(n)"), 10),
                  ValidationError);
}

TEST_CASE("choose_subsequence: ratio doubling on n^2") {
  const std::vector<long long> mu =
      choose_subsequence(SequenceSpec::formula("n^2"), 5, 4096);
  REQUIRE(mu.size() == 5);
  CHECK(mu[0] == 2);
  CHECK(mu[1] == 4);
  CHECK(mu[2] == 8);
  CHECK(mu[3] == 16);
  CHECK(mu[4] == 32);
}

TEST_CASE("choose_subsequence: every index of n*2^n doubles the ratio") {
  const SequenceSpec t = SequenceSpec::table({2, 8, 24, 64, 160, 384, 896,
                                              2048, 4608, 10240});
  const std::vector<long long> mu = choose_subsequence(t, 3, 4096);
  REQUIRE(mu.size() == 3);
  CHECK(mu[0] == 1);
  CHECK(mu[1] == 2);
  CHECK(mu[2] == 3);
}

TEST_CASE("choose_subsequence refuses bounded ratios") {
  CHECK_THROWS_AS(choose_subsequence(SequenceSpec::formula("2*n"), 3, 1000),
                  RefusalError);
  CHECK_THROWS_AS(choose_subsequence(SequenceSpec::formula("n+7"), 3, 1000),
                  RefusalError);
}

TEST_CASE("choose_subsequence advises a larger horizon when cramped") {
  CHECK_THROWS_WITH_AS(
      choose_subsequence(SequenceSpec::formula("n^2"), 12, 128),
      doctest::Contains("horizon"), ApproximationFailure);
}
