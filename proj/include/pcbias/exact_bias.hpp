#pragma once

#include "pcbias/bias_report.hpp"
#include "pcbias/boolean_function.hpp"
#include "pcbias/parity_check.hpp"

namespace pcbias {

/// Largest k * 2^(s-1) accepted by the exact methods.
inline constexpr int kExactAlphaBudget = 40;
/// Largest number of free sequence bits enumerated by the oracle.
inline constexpr int kOracleBitBudget = 30;

struct ExactOptions {
  /// Refuse specs whose independence verdict is FAIL. Disabling this
  /// evaluates the formula regardless, which is only meaningful for
  /// comparing it with simulation.
  bool enforce_independence = true;
  unsigned threads = 0;  // 0: worker_count()
};

/// Bias of PC_{f,T} as the alpha-average of products of restriction biases
///   2^(-k 2^(s-1)) sum_alpha prod_c E(f restricted to chi(c, alpha) + V_{n-k}).
BiasReport exact_bias_restrictions(const BooleanFunction& f, const ParityCheckSpec& spec,
                                   const ExactOptions& options = {});

/// Same bias as a sum over alpha of products of linear-approximation biases
///   sum_alpha prod_c E(f + phi_{chi(c, alpha)}).
BiasReport exact_bias_walsh(const BooleanFunction& f, const ParityCheckSpec& spec,
                            const ExactOptions& options = {});
BiasReport exact_bias_walsh(const BooleanFunction& f, const WalshSpectrum& spectrum,
                            const ParityCheckSpec& spec, const ExactOptions& options = {});

/// Bias of the relation taken directly from its definition: every sequence
/// position the 2^s terms read (offset residues modulo each period) is an
/// independent uniform bit, and all assignments are enumerated. Needs no
/// independence assumption.
DyadicRational enumerate_relation_bias(const BooleanFunction& f, const ParityCheckSpec& spec,
                                       unsigned threads = 0);

/// Number of free sequence bits enumerate_relation_bias visits.
int relation_free_bits(const ParityCheckSpec& spec);

/// Brute-force reference for the exact methods. Refuses FAIL specs and
/// enumerations above kOracleBitBudget bits.
BiasReport brute_force_oracle(const BooleanFunction& f, const ParityCheckSpec& spec,
                              unsigned threads = 0);

}  // namespace pcbias
