#include "pcbias/cli/cross_check.hpp"

#include "pcbias/bounds.hpp"
#include "pcbias/error.hpp"
#include "pcbias/exact_bias.hpp"

namespace pcbias::cli {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::consistent: return "CONSISTENT";
    case Verdict::inconsistent: return "INCONSISTENT";
    case Verdict::skipped: return "SKIPPED";
  }
  return "?";
}

CrossCheckResult cross_check(const BooleanFunction& f, const ParityCheckSpec& spec, unsigned threads) {
  CrossCheckResult result;
  const IndependenceReport& independence = spec.independence();
  if (independence.verdict != Independence::pass) {
    result.verdict = Verdict::skipped;
    result.reason = "independence " + std::string(to_string(independence.verdict));
    for (const auto& r : independence.reasons) result.reason += "; " + r;
    return result;
  }
  const int alpha_bits = spec.fixed_variables() << (spec.block_count() - 1);
  if (alpha_bits > kExactAlphaBudget) {
    result.verdict = Verdict::skipped;
    result.reason = "k * 2^(s-1) = " + std::to_string(alpha_bits) + " exceeds the exact-method budget";
    return result;
  }

  auto check = [&result](std::string name, bool ok, std::string detail) {
    result.checks.push_back({std::move(name), ok, std::move(detail)});
    if (!ok) result.verdict = Verdict::inconsistent;
  };

  const ExactOptions options{.enforce_independence = true, .threads = threads};
  const WalshSpectrum spectrum = walsh_transform(f);
  const BiasReport restriction = exact_bias_restrictions(f, spec, options);
  const BiasReport walsh = exact_bias_walsh(f, spectrum, spec, options);
  const DyadicRational& exact = *walsh.exact;
  result.exact = exact;

  check("restriction == walsh", *restriction.exact == exact,
        restriction.exact->to_string() + " vs " + exact.to_string());

  if (relation_free_bits(spec) <= kOracleBitBudget) {
    const BiasReport oracle = brute_force_oracle(f, spec, threads);
    check("oracle == walsh", *oracle.exact == exact, oracle.exact->to_string() + " vs " + exact.to_string());
  } else {
    result.checks.push_back({"oracle == walsh", true, "skipped: oracle budget exceeded"});
  }

  const std::uint64_t step_budget = std::uint64_t{1} << (alpha_bits + spec.block_count());
  check("op_count within 2^(k 2^(s-1) + s)", walsh.op_count <= step_budget && restriction.op_count <= step_budget,
        std::to_string(walsh.op_count) + ", " + std::to_string(restriction.op_count) + " <= " +
            std::to_string(step_budget));

  const LinearBound linear = lower_bound_linear(spectrum, spec);
  check("lower_bound_linear <= exact", linear.value <= exact, linear.value.to_string() + " <= " + exact.to_string());

  if (spec.block_count() == 1) {
    DyadicRational collapse;
    for (const std::int64_t w : block_subspace_coefficients(spectrum, spec))
      collapse = collapse + DyadicRational(w, spectrum.n).pow(2);
    check("s = 1: exact == sum of squared biases", collapse == exact, collapse.to_string());
  }

  if (const auto closed = closed_form_single_coefficient(spectrum, spec)) {
    check("closed form == exact", *closed->exact == exact, closed->exact->to_string());
  } else {
    result.checks.push_back({"closed form == exact", true, "not applicable"});
  }

  if (const auto plateaued = plateaued_bound(spectrum, spec)) {
    const DyadicRational& bound = *plateaued->plateaued_bound;
    check("exact <= plateaued bound", exact <= bound, exact.to_string() + " <= " + bound.to_string());
    check("plateaued equality iff period condition", (exact == bound) == *plateaued->equality_condition_met,
          std::string("condition ") + (*plateaued->equality_condition_met ? "met" : "not met") + ", bound " +
              bound.to_string());
  } else {
    result.checks.push_back({"exact <= plateaued bound", true, "not applicable"});
  }
  return result;
}

}  // namespace pcbias::cli
