#include "pcbias/exact_bias.hpp"

#include "alpha_sum.hpp"
#include "pcbias/bounds.hpp"
#include "pcbias/error.hpp"
#include "pcbias/threads.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pcbias {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::walsh: return "walsh";
    case Method::restriction: return "restriction";
    case Method::oracle: return "oracle";
    case Method::closed_form: return "closed-form";
  }
  return "?";
}

namespace {

std::string joined_reasons(const IndependenceReport& report) {
  std::string text;
  for (const auto& r : report.reasons) text += (text.empty() ? "" : "; ") + r;
  return text;
}

void check_preconditions(const ParityCheckSpec& spec, int arity, const ExactOptions& options, BiasReport& report) {
  if (arity != spec.variables())
    throw ValidationError("function has " + std::to_string(arity) + " variables but the spec has " +
                          std::to_string(spec.variables()) + " periods");
  const IndependenceReport& independence = spec.independence();
  report.independence = independence.verdict;
  if (independence.verdict == Independence::fail) {
    if (options.enforce_independence)
      throw ValidationError("independence check failed: " + joined_reasons(independence));
    report.warnings.push_back("independence FAIL ignored; the value is the formula, not the relation bias: " +
                              joined_reasons(independence));
  } else if (independence.verdict == Independence::pass_weak) {
    report.warnings.push_back("independence PASS-WEAK: " + joined_reasons(independence));
  }
  const int alpha_bits = spec.fixed_variables() << (spec.block_count() - 1);
  if (alpha_bits > kExactAlphaBudget)
    throw BudgetError("k * 2^(s-1) = " + std::to_string(alpha_bits) + " exceeds the budget of " +
                      std::to_string(kExactAlphaBudget));
}

void finish(BiasReport& report, const LinearBound& bound) {
  report.lower_bound = bound.value;
  report.lower_bound_mask = bound.mask;
  report.log2_bias = report.exact && report.exact->sign() > 0 ? report.exact->log2_abs()
                                                              : std::numeric_limits<double>::quiet_NaN();
}

bool is_identity(std::span<const int> order) {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace

BiasReport exact_bias_restrictions(const BooleanFunction& f, const ParityCheckSpec& spec,
                                   const ExactOptions& options) {
  BiasReport report;
  report.method = Method::restriction;
  check_preconditions(spec, f.variables(), options, report);

  const int n = spec.variables();
  const int k = spec.fixed_variables();
  const auto order = spec.variable_order();
  const RestrictionTable table =
      is_identity(order) ? restriction_table(f, k) : restriction_table(f.permuted(order), k);

  const ChiMap map(spec);
  const detail::AlphaSum sum = detail::sum_over_alpha(table.sums, map, options.threads);
  // average over alpha, each restriction bias carrying 2^-(n-k)
  const std::int64_t scale = map.alpha_bits + std::int64_t{n - k} * map.terms();
  report.exact = DyadicRational(sum.total, scale);
  report.op_count = sum.steps;
  report.precompute_evaluations = f.size();
  finish(report, lower_bound_linear(f, spec));
  return report;
}

BiasReport exact_bias_walsh(const BooleanFunction& f, const WalshSpectrum& spectrum, const ParityCheckSpec& spec,
                            const ExactOptions& options) {
  BiasReport report;
  report.method = Method::walsh;
  check_preconditions(spec, f.variables(), options, report);
  if (spectrum.n != f.variables()) throw ValidationError("spectrum arity does not match the function");

  const ChiMap map(spec);
  const std::vector<std::int64_t> values = block_subspace_coefficients(spectrum, spec);
  const detail::AlphaSum sum = detail::sum_over_alpha(values, map, options.threads);
  report.exact = DyadicRational(sum.total, std::int64_t{spectrum.n} * map.terms());
  report.op_count = sum.steps;
  report.precompute_evaluations = f.size();
  finish(report, lower_bound_linear(spectrum, spec));
  return report;
}

BiasReport exact_bias_walsh(const BooleanFunction& f, const ParityCheckSpec& spec, const ExactOptions& options) {
  return exact_bias_walsh(f, walsh_transform(f), spec, options);
}

namespace {

// group[v][c]: index of the free bit holding x_v(tau_c); one bit per distinct
// residue of tau_c modulo the period of x_v.
struct ResidueLayout {
  std::vector<std::vector<int>> group;
  int bits = 0;
};

ResidueLayout residue_layout(const ParityCheckSpec& spec) {
  ResidueLayout layout;
  const auto offsets = spec.offsets();
  for (int v = 0; v < spec.variables(); ++v) {
    std::map<std::uint64_t, int> seen;
    std::vector<int> g(offsets.size());
    for (std::size_t c = 0; c < offsets.size(); ++c) {
      const auto [it, inserted] = seen.try_emplace(offsets[c] % spec.periods()[v], layout.bits);
      if (inserted) ++layout.bits;
      g[c] = it->second;
    }
    layout.group.push_back(std::move(g));
  }
  return layout;
}

}  // namespace

int relation_free_bits(const ParityCheckSpec& spec) { return residue_layout(spec).bits; }

DyadicRational enumerate_relation_bias(const BooleanFunction& f, const ParityCheckSpec& spec, unsigned threads) {
  if (f.variables() != spec.variables()) throw ValidationError("function arity does not match the spec");
  const ResidueLayout layout = residue_layout(spec);
  if (layout.bits > 62) throw BudgetError("relation has too many free bits to enumerate");
  const int n = spec.variables();
  const std::size_t terms = spec.term_count();
  const std::uint64_t assignments = std::uint64_t{1} << layout.bits;
  if (threads == 0) threads = worker_count();

  const auto parts = parallel_ranges(assignments, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::int64_t sum = 0;
    for (std::uint64_t a = begin; a < end; ++a) {
      bool relation = false;
      for (std::size_t c = 0; c < terms; ++c) {
        std::uint32_t x = 0;
        for (int v = 0; v < n; ++v) x |= static_cast<std::uint32_t>((a >> layout.group[v][c]) & 1U) << v;
        relation ^= f(x);
      }
      sum += relation ? -1 : 1;
    }
    return sum;
  });
  BigInt total = 0;
  for (const std::int64_t p : parts) total += p;
  return {total, layout.bits};
}

BiasReport brute_force_oracle(const BooleanFunction& f, const ParityCheckSpec& spec, unsigned threads) {
  if (f.variables() != spec.variables()) throw ValidationError("function arity does not match the spec");
  BiasReport report;
  report.method = Method::oracle;
  report.independence = spec.independence().verdict;
  if (report.independence == Independence::fail)
    throw ValidationError("independence check failed: " + joined_reasons(spec.independence()));
  if (report.independence == Independence::pass_weak)
    report.warnings.push_back("independence PASS-WEAK: " + joined_reasons(spec.independence()));
  const int bits = relation_free_bits(spec);
  if (bits > kOracleBitBudget)
    throw BudgetError("oracle needs " + std::to_string(bits) + " free bits, budget is " +
                      std::to_string(kOracleBitBudget));
  report.exact = enumerate_relation_bias(f, spec, threads);
  report.op_count = (std::uint64_t{1} << bits) * spec.term_count();
  finish(report, lower_bound_linear(f, spec));
  return report;
}

}  // namespace pcbias
