#include "pcbias/parity_check.hpp"

#include "pcbias/boolean_function.hpp"
#include "pcbias/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <utility>

namespace pcbias {

namespace {

constexpr int kMaxBlocks = 20;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("parity-check offsets overflow 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ValidationError("parity-check offsets overflow 64 bits");
  return r;
}

std::string var_name(int v) { return "x" + std::to_string(v + 1); }

}  // namespace

std::string_view to_string(Independence verdict) {
  switch (verdict) {
    case Independence::pass: return "PASS";
    case Independence::pass_weak: return "PASS-WEAK";
    case Independence::fail: return "FAIL";
  }
  return "?";
}

ParityCheckSpec::ParityCheckSpec(std::vector<std::uint64_t> periods, std::vector<std::vector<int>> blocks,
                                 std::vector<std::uint64_t> multipliers)
    : periods_(std::move(periods)), blocks_(std::move(blocks)), multipliers_(std::move(multipliers)) {
  const int n = variables();
  if (n < 1 || n > BooleanFunction::kMaxVariables) throw ValidationError("spec needs 1..24 periods");
  if (std::ranges::any_of(periods_, [](std::uint64_t t) { return t == 0; }))
    throw ValidationError("periods must be positive");
  if (blocks_.empty()) throw ValidationError("spec needs at least one block");
  if (block_count() > kMaxBlocks) throw ValidationError("at most 20 blocks are supported");
  if (multipliers_.size() != blocks_.size())
    throw ValidationError("expected one multiplier per block, got " + std::to_string(multipliers_.size()));

  std::vector<bool> used(n, false);
  for (int i = 0; i < block_count(); ++i) {
    if (blocks_[i].empty()) throw ValidationError("block " + std::to_string(i + 1) + " is empty");
    if (multipliers_[i] == 0) throw ValidationError("multipliers must be positive");
    std::uint64_t modulus = 1;
    for (const int v : blocks_[i]) {
      if (v < 0 || v >= n) throw ValidationError("block variable " + std::to_string(v + 1) + " out of range");
      if (used[v]) throw ValidationError("variable " + var_name(v) + " appears in two blocks");
      used[v] = true;
      order_.push_back(v);
      block_of_position_.push_back(i);
      modulus = checked_mul(modulus / std::gcd(modulus, periods_[v]), periods_[v]);
    }
    moduli_.push_back(checked_mul(multipliers_[i], modulus));
  }
  for (int v = 0; v < n; ++v)
    if (!used[v]) order_.push_back(v);

  offsets_.assign(term_count(), 0);
  for (std::uint32_t c = 1; c < term_count(); ++c) {
    const int i = std::countr_zero(c);
    offsets_[c] = checked_add(offsets_[c & (c - 1)], moduli_[i]);
  }
  independence_ = validate_independence(*this);
}

bool ParityCheckSpec::is_fixed(int variable) const {
  const auto fixed = std::span(order_).first(block_of_position_.size());
  return std::ranges::find(fixed, variable) != fixed.end();
}

IndependenceReport validate_independence(const ParityCheckSpec& spec) {
  IndependenceReport report;
  auto downgrade = [&report](Independence v, std::string reason) {
    report.verdict = std::max(report.verdict, v);
    report.reasons.push_back(std::move(reason));
  };
  const auto offsets = spec.offsets();
  const std::uint32_t terms = spec.term_count();
  std::vector<std::pair<std::uint64_t, std::uint32_t>> residues(terms);

  for (int p = 0; p < spec.variables(); ++p) {
    const int v = spec.variable_order()[p];
    const std::uint64_t period = spec.periods()[v];
    for (std::uint32_t c = 0; c < terms; ++c) residues[c] = {offsets[c] % period, c};
    std::ranges::sort(residues);

    if (p >= spec.fixed_variables()) {
      for (std::uint32_t c = 1; c < terms; ++c) {
        if (offsets[c] % period == 0) {
          downgrade(Independence::fail, "offset " + std::to_string(offsets[c]) + " is a multiple of the period " +
                                            std::to_string(period) + " of " + var_name(v));
          break;
        }
      }
      for (std::uint32_t r = 1; r < terms; ++r) {
        if (residues[r].first == residues[r - 1].first) {
          const std::uint64_t a = offsets[residues[r - 1].second], b = offsets[residues[r].second];
          downgrade(Independence::pass_weak, "offsets " + std::to_string(std::min(a, b)) + " and " +
                                                 std::to_string(std::max(a, b)) + " differ by a multiple of the period " +
                                                 std::to_string(period) + " of " + var_name(v));
          break;
        }
      }
      continue;
    }

    // A block variable must coincide exactly on the term pairs {c, c ^ 2^i}.
    const std::uint32_t partner_bit = std::uint32_t{1} << spec.block_of_position(p);
    bool ok = true;
    for (std::uint32_t r = 0; r < terms && ok; r += 2) {
      const auto& [ra, ca] = residues[r];
      const auto& [rb, cb] = residues[r + 1];
      ok = ra == rb && (ca ^ cb) == partner_bit && (r + 2 >= terms || residues[r + 2].first != rb);
    }
    if (!ok)
      downgrade(Independence::fail, "block variable " + var_name(v) + " with period " + std::to_string(period) +
                                        " repeats between terms that are not paired by its block modulus");
  }
  return report;
}

AlphaWord::AlphaWord(std::uint64_t bits, int k, int s) : bits_(bits), k_(k), s_(s) {
  if (k < 1 || s < 1 || length() > 64) throw ValidationError("alpha word must have 1..64 bits");
  if (length() < 64 && (bits >> length()) != 0) throw ValidationError("alpha word has bits beyond its length");
}

std::uint32_t chi(std::uint32_t c, const AlphaWord& alpha, const ParityCheckSpec& spec) {
  if (c >= spec.term_count()) throw ValidationError("term index " + std::to_string(c) + " out of range");
  if (alpha.fixed_variables() != spec.fixed_variables() || alpha.block_count() != spec.block_count())
    throw ValidationError("alpha word shape does not match the spec");
  std::uint32_t value = 0;
  for (int p = 0; p < spec.fixed_variables(); ++p) {
    const auto m = static_cast<int>(chi_source(c, spec.block_of_position(p)));
    value |= static_cast<std::uint32_t>(alpha.bit(p, m)) << p;
  }
  return value;
}

ChiMap::ChiMap(const ParityCheckSpec& spec)
    : k(spec.fixed_variables()), s(spec.block_count()), alpha_bits(k << (s - 1)) {
  const int half = 1 << (s - 1);
  source.resize(std::size_t{terms()} * k);
  for (std::uint32_t c = 0; c < terms(); ++c)
    for (int p = 0; p < k; ++p)
      source[c * k + p] = static_cast<std::uint32_t>(p * half) + chi_source(c, spec.block_of_position(p));
}

}  // namespace pcbias
