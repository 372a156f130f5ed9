#include "oracles.hpp"
#include "pcbias/error.hpp"
#include "pcbias/exact_bias.hpp"
#include "pcbias/seqgen.hpp"
#include "pcbias/text_format.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace pcbias;

namespace {

// Maximal-length registers: periods 7, 3 and 15; x^4+x^3+x^2+x+1 gives 5.
Lfsr lfsr7() { return {3, 0b011, 1}; }
Lfsr lfsr3() { return {2, 0b11, 1}; }
Lfsr lfsr5() { return {4, 0b1111, 1}; }
Lfsr lfsr15() { return {4, 0b0011, 1}; }

Generator small_generator(const BooleanFunction& f) {
  return Generator({PeriodicDevice(lfsr7()), PeriodicDevice(lfsr3()), PeriodicDevice(lfsr5())}, f);
}

}  // namespace

TEST_CASE("least periods") {
  CHECK(least_period(lfsr7()) == 7);
  CHECK(least_period(lfsr3()) == 3);
  CHECK(least_period(lfsr5()) == 5);
  CHECK(least_period(lfsr15()) == 15);
  CHECK(least_period(ExplicitSequence{{0, 1, 1, 0, 1, 1}}) == 3);
  CHECK(least_period(ExplicitSequence{{1, 1, 1}}) == 1);
  // s_{t+3} = s_t + s_{t+1}*s_{t+2}.
  const Nlfsr nl{3, parse_anf("x1 + x2*x3", 3), 1};
  const std::uint64_t p = least_period(nl);
  CHECK(p >= 1);
  CHECK(p <= 7);
}

TEST_CASE("device errors") {
  CHECK_THROWS_AS(least_period(ExplicitSequence{}), ValidationError);
  CHECK_THROWS_AS(least_period(ExplicitSequence{{0, 2}}), ValidationError);
  CHECK_THROWS_AS(least_period(Lfsr{3, 0b011, 0}), ValidationError);
  CHECK_THROWS_AS(least_period(Lfsr{21, 1, 1}), ValidationError);
  CHECK_THROWS_AS(least_period(Lfsr{3, 0b011, 8}), ValidationError);
  CHECK_THROWS_AS(least_period(Lfsr{3, 0b1011, 1}), ValidationError);
  // Feedback s_{t+2} = s_{t+1}: state 0b01 leads to 0b00... never back to 0b01.
  CHECK_THROWS_AS(least_period(Nlfsr{2, parse_anf("x2", 2), 0b01}), ValidationError);
  CHECK_THROWS_AS(least_period(Nlfsr{3, parse_anf("x1", 2), 1}), ValidationError);
  CHECK_THROWS_AS(Generator({PeriodicDevice(lfsr7())}, parse_anf("x1 + x2")), ValidationError);
}

TEST_CASE("lfsr output follows the recurrence") {
  const PeriodicDevice d(lfsr7());
  // s_{t+3} = s_t + s_{t+1}.
  for (std::uint64_t t = 0; t < 30; ++t) CHECK(d.bit(t + 3) == (d.bit(t) ^ d.bit(t + 1)));
  CHECK(d.bit(0) == true);
  CHECK(d.bit(1) == false);
  CHECK(d.bit(2) == false);
}

TEST_CASE("keystream periodicity") {
  const Generator g = small_generator(parse_anf("x1 + x2*x3"));
  CHECK(g.periods() == std::vector<std::uint64_t>{7, 3, 5});
  const auto stream = keystream(g, 210);
  for (std::size_t t = 0; t + 105 < stream.size(); ++t) CHECK(stream[t] == stream[t + 105]);
  const std::vector<std::uint64_t> phases{1, 2, 3};
  for (std::uint64_t t = 0; t < 20; ++t) {
    const std::uint32_t x = g.devices()[0].bit(t + 1) | g.devices()[1].bit(t + 2) << 1 | g.devices()[2].bit(t + 3) << 2;
    CHECK(g.output(t, phases) == g.combiner()(x));
  }
}

TEST_CASE("parity-check samples") {
  const Generator single({PeriodicDevice(lfsr7())}, parse_anf("x1"));
  const auto stream = keystream(single, 100);
  const ParityCheckSpec spec({7}, {{0}}, {1});
  std::vector<std::uint64_t> ts(90);
  std::iota(ts.begin(), ts.end(), 0);
  for (const auto bit : parity_check_samples(stream, spec, ts)) CHECK(bit == 0);

  // A separable combiner over matching blocks cancels on every sample.
  const Generator sep = small_generator(parse_anf("x1*x2 + x3"));
  const auto s2 = keystream(sep, 400);
  const ParityCheckSpec blocks({7, 3, 5}, {{0, 1}, {2}}, {1, 1});
  ts.resize(300);
  std::iota(ts.begin(), ts.end(), 0);
  for (const auto bit : parity_check_samples(s2, blocks, ts)) CHECK(bit == 0);

  std::vector<std::uint64_t> late{95};
  CHECK_THROWS_AS(parity_check_samples(stream, spec, late), ValidationError);
}

TEST_CASE("empirical bias") {
  const ParityCheckSpec spec({7, 3, 5}, {{0}}, {1});
  SUBCASE("constant combiner") {
    const auto est = empirical_bias(small_generator(BooleanFunction(3)), spec, 5000, 3);
    CHECK(est.mean == 1.0);
    CHECK(est.standard_error == 0.0);
    CHECK(est.signed_sum == 5000);
  }
  SUBCASE("deterministic in the seed and independent of threads") {
    const Generator g = small_generator(parse_anf("x1 + x2*x3"));
    const auto a = empirical_bias(g, spec, 200000, 7, Estimator::random_sequences, 1);
    const auto b = empirical_bias(g, spec, 200000, 7, Estimator::random_sequences, 3);
    CHECK(a.signed_sum == b.signed_sum);
    CHECK(a.mean == b.mean);
    const auto c = empirical_bias(g, spec, 200000, 8);
    CHECK(c.signed_sum != a.signed_sum);
    CHECK(std::abs(a.mean - 0.25) < 4 * a.standard_error);
    CHECK(a.interval_low < a.mean);
    CHECK(a.interval_high > a.mean);
  }
  SUBCASE("every estimator runs") {
    const Generator g = small_generator(parse_anf("x1 + x2*x3"));
    for (const Estimator e : {Estimator::random_sequences, Estimator::random_phases, Estimator::sliding_window}) {
      const auto est = empirical_bias(g, spec, 1000, 1, e);
      CHECK(est.trials == 1000);
      CHECK(est.estimator == e);
      CHECK(std::abs(est.mean) <= 1.0);
    }
  }
  SUBCASE("errors") {
    const Generator g = small_generator(parse_anf("x1 + x2*x3"));
    CHECK_THROWS_AS(empirical_bias(g, spec, 0, 1), ValidationError);
    CHECK_THROWS_AS(empirical_bias(g, ParityCheckSpec({7, 3, 11}, {{0}}, {1}), 10, 1), ValidationError);
  }
}

TEST_CASE("independence failure shows up in simulation") {
  // Block {1} with M = 21 also cancels x2 (period 3), so the true bias is 1/2
  // while the formula gives 1/4.
  const Generator g = small_generator(parse_anf("x1 + x2*x3"));
  const ParityCheckSpec spec({7, 3, 5}, {{0}}, {3});
  REQUIRE(spec.independence().verdict == Independence::fail);
  const auto est = empirical_bias(g, spec, 100000, 11);
  const auto formula = exact_bias_walsh(g.combiner(), spec, {.enforce_independence = false}).exact;
  REQUIRE(formula);
  const DyadicRational truth = enumerate_relation_bias(g.combiner(), spec);
  CHECK(std::abs(est.mean - truth.to_double()) < 5 * est.standard_error + 1e-12);
  CHECK(std::abs(est.mean - formula->to_double()) > 10 * est.standard_error);
}

TEST_CASE("attack cost") {
  const ParityCheckSpec two({3, 5, 7}, {{0}, {1}}, {1, 1});
  const auto c = attack_cost(DyadicRational(BigInt(1), 12), two);
  CHECK(c.time == BigInt(1) << 26);
  CHECK(c.data == (BigInt(1) << 24) + 8);
  CHECK(attack_cost(DyadicRational(BigInt(1), 20), two).time == BigInt(1) << 42);
  const auto one = attack_cost(1, two);
  CHECK(one.time == 4);
  CHECK(one.data == 1 + 8);
  CHECK_THROWS_AS(attack_cost(DyadicRational(BigInt(-1), 2), two), ValidationError);
  CHECK_THROWS_AS(attack_cost(0, two), ValidationError);
  CHECK_THROWS_AS(attack_cost(2, two), ValidationError);
}
