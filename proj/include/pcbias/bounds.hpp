#pragma once

#include "pcbias/bias_report.hpp"
#include "pcbias/boolean_function.hpp"
#include "pcbias/parity_check.hpp"

#include <optional>
#include <vector>

namespace pcbias {

/// g = g_1 + ... + g_s with g_i depending only on the variables of block i.
class SeparableApproximation {
 public:
  /// Splits an n-variable g along the spec's blocks. Throws ValidationError
  /// when g depends on a variable outside the blocks or couples two blocks.
  static SeparableApproximation decompose(const BooleanFunction& g, const ParityCheckSpec& spec);

  /// parts[i] is a function of |block i| variables, in block order.
  static SeparableApproximation from_parts(std::vector<BooleanFunction> parts,
                                           const ParityCheckSpec& spec);

  const BooleanFunction& function() const { return g_; }
  const std::vector<BooleanFunction>& parts() const { return parts_; }

 private:
  SeparableApproximation(BooleanFunction g, std::vector<BooleanFunction> parts)
      : g_(std::move(g)), parts_(std::move(parts)) {}

  BooleanFunction g_;
  std::vector<BooleanFunction> parts_;
};

struct LinearBound {
  DyadicRational value;        // [E(f + phi_a)]^(2^s)
  DyadicRational linear_bias;  // E(f + phi_a)
  std::uint32_t mask = 0;      // a, original variable labels
};

/// Walsh coefficients of f at the masks supported on the block variables.
/// Entry v (bit p = relabeled position p) is W(a) for the embedded mask a.
std::vector<std::int64_t> block_subspace_coefficients(const WalshSpectrum& spectrum,
                                                      const ParityCheckSpec& spec);
/// Embeds a k-bit relabeled vector into an n-bit mask in original labels.
std::uint32_t embed_block_mask(std::uint32_t v, const ParityCheckSpec& spec);

/// max over masks a on the block variables of [E(f + phi_a)]^(2^s).
LinearBound lower_bound_linear(const WalshSpectrum& spectrum, const ParityCheckSpec& spec);
LinearBound lower_bound_linear(const BooleanFunction& f, const ParityCheckSpec& spec);

/// [E(f + g)]^(2^s).
DyadicRational lower_bound_separable(const BooleanFunction& f, const SeparableApproximation& g,
                                     const ParityCheckSpec& spec);

/// [E(f + phi_a)]^(2^s) when a is the only mask on the block variables with a
/// nonzero coefficient; nullopt otherwise.
std::optional<BiasReport> closed_form_single_coefficient(const WalshSpectrum& spectrum,
                                                         const ParityCheckSpec& spec);
std::optional<BiasReport> closed_form_single_coefficient(const BooleanFunction& f,
                                                         const ParityCheckSpec& spec);

/// |A|^(2^(s-1)) eps^(2^s) for a plateaued (k-2)-resilient f, with A the
/// block-variable masks carrying nonzero coefficients. Also evaluates whether
/// some M_i is a period of every sequence in the union of supp(1_k + a),
/// a in A, the condition under which the bound is attained. nullopt when
/// the hypotheses do not hold.
std::optional<BiasReport> plateaued_bound(const WalshSpectrum& spectrum, const ParityCheckSpec& spec);
std::optional<BiasReport> plateaued_bound(const BooleanFunction& f, const ParityCheckSpec& spec);

}  // namespace pcbias
