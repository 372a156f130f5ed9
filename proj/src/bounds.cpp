#include "pcbias/bounds.hpp"

#include "pcbias/error.hpp"

#include <cstdlib>
#include <limits>

namespace pcbias {

namespace {

std::uint32_t gather_block(std::uint32_t x, const std::vector<int>& block) {
  std::uint32_t y = 0;
  for (std::size_t p = 0; p < block.size(); ++p) y |= ((x >> block[p]) & 1U) << p;
  return y;
}

std::uint32_t scatter_block(std::uint32_t y, const std::vector<int>& block) {
  std::uint32_t x = 0;
  for (std::size_t p = 0; p < block.size(); ++p) x |= ((y >> p) & 1U) << block[p];
  return x;
}

std::uint32_t block_projection(std::uint32_t x, const std::vector<int>& block) {
  return scatter_block(gather_block(x, block), block);
}

void check_arity(int arity, const ParityCheckSpec& spec) {
  if (arity != spec.variables())
    throw ValidationError("function has " + std::to_string(arity) + " variables but the spec has " +
                          std::to_string(spec.variables()) + " periods");
}

// Block-subspace coefficients from the restriction sums of the relabeled
// function: W(a, 0) = sum_x (-1)^(a.x) R(x) over the k block positions.
std::vector<std::int64_t> block_coefficients_from_restrictions(const BooleanFunction& f, const ParityCheckSpec& spec) {
  const int k = spec.fixed_variables();
  std::vector<std::int64_t> sums(std::size_t{1} << k, 0);
  const auto order = spec.variable_order();
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    std::uint32_t v = 0;
    for (int p = 0; p < k; ++p) v |= ((x >> order[p]) & 1U) << p;
    sums[v] += f(x) ? -1 : 1;
  }
  walsh_butterfly(std::span<std::int64_t>(sums));
  return sums;
}

LinearBound linear_bound(const std::vector<std::int64_t>& coeffs, int n, const ParityCheckSpec& spec) {
  std::uint32_t best = 0;
  for (std::uint32_t v = 1; v < coeffs.size(); ++v)
    if (std::abs(coeffs[v]) > std::abs(coeffs[best])) best = v;
  LinearBound bound;
  bound.linear_bias = DyadicRational(coeffs[best], n);
  bound.value = bound.linear_bias.pow(spec.term_count());
  bound.mask = embed_block_mask(best, spec);
  return bound;
}

}  // namespace

SeparableApproximation SeparableApproximation::decompose(const BooleanFunction& g, const ParityCheckSpec& spec) {
  check_arity(g.variables(), spec);
  const auto& blocks = spec.blocks();
  const bool base = g(0);
  const bool correction = base && (blocks.size() - 1) % 2 == 1;
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    bool sum = correction;
    for (const auto& block : blocks) sum ^= g(block_projection(x, block));
    if (sum != g(x))
      throw ValidationError("approximation is not a sum of per-block functions (differs at input " +
                            std::to_string(x) + ")");
  }
  std::vector<BooleanFunction> parts;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& block = blocks[i];
    parts.push_back(BooleanFunction::from_predicate(static_cast<int>(block.size()), [&](std::uint32_t y) {
      return g(scatter_block(y, block)) ^ (i > 0 && base);
    }));
  }
  return {g, std::move(parts)};
}

SeparableApproximation SeparableApproximation::from_parts(std::vector<BooleanFunction> parts,
                                                          const ParityCheckSpec& spec) {
  const auto& blocks = spec.blocks();
  if (parts.size() != blocks.size()) throw ValidationError("expected one part per block");
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].variables() != static_cast<int>(blocks[i].size()))
      throw ValidationError("part " + std::to_string(i + 1) + " has the wrong number of variables");
  BooleanFunction g = BooleanFunction::from_predicate(spec.variables(), [&](std::uint32_t x) {
    bool value = false;
    for (std::size_t i = 0; i < parts.size(); ++i) value ^= parts[i](gather_block(x, blocks[i]));
    return value;
  });
  return {std::move(g), std::move(parts)};
}

std::uint32_t embed_block_mask(std::uint32_t v, const ParityCheckSpec& spec) {
  std::uint32_t mask = 0;
  const auto order = spec.variable_order();
  for (int p = 0; p < spec.fixed_variables(); ++p) mask |= ((v >> p) & 1U) << order[p];
  return mask;
}

std::vector<std::int64_t> block_subspace_coefficients(const WalshSpectrum& spectrum, const ParityCheckSpec& spec) {
  check_arity(spectrum.n, spec);
  std::vector<std::int64_t> values(std::size_t{1} << spec.fixed_variables());
  for (std::uint32_t v = 0; v < values.size(); ++v) values[v] = spectrum[embed_block_mask(v, spec)];
  return values;
}

LinearBound lower_bound_linear(const WalshSpectrum& spectrum, const ParityCheckSpec& spec) {
  return linear_bound(block_subspace_coefficients(spectrum, spec), spectrum.n, spec);
}

LinearBound lower_bound_linear(const BooleanFunction& f, const ParityCheckSpec& spec) {
  check_arity(f.variables(), spec);
  return linear_bound(block_coefficients_from_restrictions(f, spec), f.variables(), spec);
}

DyadicRational lower_bound_separable(const BooleanFunction& f, const SeparableApproximation& g,
                                     const ParityCheckSpec& spec) {
  check_arity(f.variables(), spec);
  check_arity(g.function().variables(), spec);
  return bias(f ^ g.function()).pow(spec.term_count());
}

std::optional<BiasReport> closed_form_single_coefficient(const WalshSpectrum& spectrum, const ParityCheckSpec& spec) {
  if (spec.independence().verdict == Independence::fail) return std::nullopt;
  const std::vector<std::int64_t> coeffs = block_subspace_coefficients(spectrum, spec);
  std::optional<std::uint32_t> single;
  for (std::uint32_t v = 0; v < coeffs.size(); ++v) {
    if (coeffs[v] == 0) continue;
    if (single) return std::nullopt;
    single = v;
  }
  if (!single) return std::nullopt;

  BiasReport report;
  report.method = Method::closed_form;
  report.independence = spec.independence().verdict;
  report.exact = DyadicRational(coeffs[*single], spectrum.n).pow(spec.term_count());
  report.lower_bound = *report.exact;
  report.lower_bound_mask = embed_block_mask(*single, spec);
  report.op_count = spec.term_count();
  report.precompute_evaluations = spectrum.coeffs.size();
  report.log2_bias = report.exact->log2_abs();
  return report;
}

std::optional<BiasReport> closed_form_single_coefficient(const BooleanFunction& f, const ParityCheckSpec& spec) {
  return closed_form_single_coefficient(walsh_transform(f), spec);
}

std::optional<BiasReport> plateaued_bound(const WalshSpectrum& spectrum, const ParityCheckSpec& spec) {
  if (spec.independence().verdict == Independence::fail) return std::nullopt;
  const std::optional<DyadicRational> amplitude = plateaued_amplitude(spectrum);
  if (!amplitude) return std::nullopt;
  const int k = spec.fixed_variables();
  if (resiliency_order(spectrum) < k - 2) return std::nullopt;

  const std::vector<std::int64_t> coeffs = block_subspace_coefficients(spectrum, spec);
  const std::uint32_t all_block = (std::uint32_t{1} << k) - 1;
  std::uint64_t support = 0;
  std::uint32_t uncovered = 0;  // union of supp(1_k + a) over a in A
  for (std::uint32_t v = 0; v < coeffs.size(); ++v) {
    if (coeffs[v] == 0) continue;
    ++support;
    uncovered |= all_block & ~v;
  }

  bool attained = false;
  for (int i = 0; i < spec.block_count() && !attained; ++i) {
    bool covers = true;
    for (int p = 0; p < k && covers; ++p)
      if ((uncovered >> p) & 1U) covers = spec.block_moduli()[i] % spec.periods()[spec.variable_order()[p]] == 0;
    attained = covers;
  }

  const std::uint32_t terms = spec.term_count();
  BiasReport report;
  report.method = Method::closed_form;
  report.independence = spec.independence().verdict;
  report.plateaued_bound = DyadicRational(static_cast<std::int64_t>(support)).pow(terms / 2) * amplitude->pow(terms);
  report.equality_condition_met = attained;
  if (attained) report.exact = report.plateaued_bound;
  const LinearBound linear = lower_bound_linear(spectrum, spec);
  report.lower_bound = linear.value;
  report.lower_bound_mask = linear.mask;
  report.op_count = coeffs.size();
  report.precompute_evaluations = spectrum.coeffs.size();
  report.log2_bias = report.exact && report.exact->sign() > 0 ? report.exact->log2_abs()
                                                              : std::numeric_limits<double>::quiet_NaN();
  return report;
}

std::optional<BiasReport> plateaued_bound(const BooleanFunction& f, const ParityCheckSpec& spec) {
  check_arity(f.variables(), spec);
  return plateaued_bound(walsh_transform(f), spec);
}

}  // namespace pcbias
