#include "oracles.hpp"
#include "pcbias/error.hpp"
#include "pcbias/exact_bias.hpp"
#include "pcbias/text_format.hpp"

#include <doctest.h>

#include <random>

using namespace pcbias;

namespace {

DyadicRational frac(std::int64_t num, int log2_den) { return {num, log2_den}; }

DyadicRational oracle(const BooleanFunction& f, const ParityCheckSpec& spec) {
  const auto periods = std::vector(spec.periods().begin(), spec.periods().end());
  const auto offsets = std::vector(spec.offsets().begin(), spec.offsets().end());
  return testing::definition_bias(f, periods, offsets);
}

void check_all_methods(const BooleanFunction& f, const ParityCheckSpec& spec, const DyadicRational& expected) {
  CHECK(exact_bias_restrictions(f, spec).exact == expected);
  CHECK(exact_bias_walsh(f, spec).exact == expected);
  CHECK(brute_force_oracle(f, spec).exact == expected);
  CHECK(oracle(f, spec) == expected);
}

}  // namespace

TEST_CASE("worked values") {
  // x1 + x2 with both variables in one block: the relation is identically 0.
  check_all_methods(parse_anf("x1 + x2"), ParityCheckSpec({3, 5}, {{0, 1}}, {1}), 1);
  check_all_methods(parse_anf("x1"), ParityCheckSpec({7}, {{0}}, {1}), 1);
  check_all_methods(BooleanFunction(3), ParityCheckSpec({3, 5, 7}, {{0}, {1}}, {1, 1}), 1);
  // x2*x3 is read at two unrelated positions: (1/2)^2.
  check_all_methods(parse_anf("x1 + x2*x3"), ParityCheckSpec({7, 3, 5}, {{0}}, {1}), frac(1, 2));
  check_all_methods(parse_anf("x1 + x2*x3"), ParityCheckSpec({7, 3, 5}, {{0}}, {4}), frac(1, 2));
}

TEST_CASE("x1*x2 + x3 over two blocks") {
  const auto f = parse_anf("x1*x2 + x3");
  const ParityCheckSpec spec({3, 5, 7}, {{0}, {1}}, {1, 1});
  REQUIRE(spec.independence().verdict == Independence::pass);
  const auto walsh = exact_bias_walsh(f, spec);
  REQUIRE(walsh.exact);
  CHECK(walsh.method == Method::walsh);
  CHECK(exact_bias_restrictions(f, spec).exact == walsh.exact);
  CHECK(oracle(f, spec) == *walsh.exact);
  // x3 appears at four independent positions and is balanced.
  CHECK(*walsh.exact == 0);
}

TEST_CASE("no in-subspace coefficient gives a zero bias") {
  // 1-resilient: W vanishes at 0 and at e1.
  const auto f = parse_anf("x1 + x2 + x3*x4");
  const ParityCheckSpec spec({3, 5, 7, 11}, {{0}}, {1});
  check_all_methods(f, spec, 0);
}

TEST_CASE("random instances agree with the definition") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    const testing::Instance inst = testing::random_instance(rng, 5, 3, 3);
    const ParityCheckSpec spec = inst.spec();
    if (relation_free_bits(spec) > 22) continue;
    const DyadicRational expected = oracle(inst.f, spec);
    const BiasReport r = exact_bias_restrictions(inst.f, spec);
    const BiasReport w = exact_bias_walsh(inst.f, spec);
    INFO("trial " << trial);
    CHECK(r.exact == expected);
    CHECK(w.exact == expected);
    CHECK(enumerate_relation_bias(inst.f, spec) == expected);
    const int k = spec.fixed_variables(), s = spec.block_count();
    const std::uint64_t budget = std::uint64_t{1} << (k * (1 << (s - 1)) + s);
    CHECK(r.op_count <= budget);
    CHECK(w.op_count <= budget);
    CHECK(r.precompute_evaluations <= inst.f.size());
  }
}

TEST_CASE("thread count does not change results") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const testing::Instance inst = testing::random_instance(rng, 8, 6, 3);
    const ParityCheckSpec spec = inst.spec();
    const auto one = exact_bias_walsh(inst.f, spec, {.threads = 1});
    const auto four = exact_bias_walsh(inst.f, spec, {.threads = 4});
    CHECK(one.exact == four.exact);
    CHECK(exact_bias_restrictions(inst.f, spec, {.threads = 3}).exact == one.exact);
  }
}

TEST_CASE("independence failures") {
  // 14 is a multiple of the free period 7.
  const auto f = parse_anf("x1 + x2*x3");
  const ParityCheckSpec spec({14, 3, 7}, {{0}}, {1});
  REQUIRE(spec.independence().verdict == Independence::fail);
  CHECK_THROWS_AS(exact_bias_restrictions(f, spec), ValidationError);
  CHECK_THROWS_AS(exact_bias_walsh(f, spec), ValidationError);
  CHECK_THROWS_AS(brute_force_oracle(f, spec), ValidationError);

  // The formula still evaluates when asked, and disagrees with the relation.
  const auto formula = exact_bias_walsh(f, spec, {.enforce_independence = false});
  REQUIRE(formula.exact);
  CHECK(formula.independence == Independence::fail);
  CHECK_FALSE(formula.warnings.empty());
  const DyadicRational truth = enumerate_relation_bias(f, spec);
  CHECK(truth == oracle(f, spec));
  CHECK(truth != *formula.exact);
}

TEST_CASE("weak independence still computes with a warning") {
  const auto f = parse_anf("x1 + x2 + x3");
  const ParityCheckSpec spec({3, 7, 4}, {{0}, {1}}, {1, 1});
  REQUIRE(spec.independence().verdict == Independence::pass_weak);
  const auto report = exact_bias_walsh(f, spec);
  CHECK(report.independence == Independence::pass_weak);
  CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("budgets") {
  // k 2^(s-1) = 11 * 4 = 44 alpha bits.
  const BooleanFunction f(11);
  const ParityCheckSpec big({101, 103, 107, 109, 113, 127, 131, 137, 139, 7, 11},
                            {{0, 1, 2, 3, 4, 5, 6, 7, 8}, {9}, {10}}, {1, 1, 1});
  REQUIRE(big.independence().verdict == Independence::pass);
  CHECK_THROWS_AS(exact_bias_walsh(f, big), BudgetError);
  CHECK_THROWS_AS(exact_bias_restrictions(f, big), BudgetError);

  const BooleanFunction g(6);
  const ParityCheckSpec wide({7, 11, 13, 19, 23, 29}, {{0}, {1}, {2}}, {1, 1, 1});
  REQUIRE(wide.independence().verdict == Independence::pass);
  CHECK(relation_free_bits(wide) > kOracleBitBudget);
  CHECK_THROWS_AS(brute_force_oracle(g, wide), BudgetError);
}

TEST_CASE("arity mismatch") {
  CHECK_THROWS_AS(exact_bias_walsh(BooleanFunction(2), ParityCheckSpec({3, 5, 7}, {{0}}, {1})), ValidationError);
}
