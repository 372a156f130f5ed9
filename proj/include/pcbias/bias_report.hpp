#pragma once

#include "pcbias/dyadic.hpp"
#include "pcbias/parity_check.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcbias {

enum class Method { walsh, restriction, oracle, closed_form };

std::string_view to_string(Method method);

struct BiasReport {
  std::optional<DyadicRational> exact;
  Method method = Method::walsh;
  DyadicRational lower_bound;
  /// Mask (original variable labels) attaining lower_bound.
  std::uint32_t lower_bound_mask = 0;
  std::optional<DyadicRational> plateaued_bound;
  std::optional<bool> equality_condition_met;
  /// Table-lookup-and-multiply steps of the main loop (function evaluations
  /// for the oracle).
  std::uint64_t op_count = 0;
  /// Truth-table reads made before the main loop.
  std::uint64_t precompute_evaluations = 0;
  /// log2 of the exact value; NaN when absent or not positive.
  double log2_bias = 0;
  Independence independence = Independence::pass;
  std::vector<std::string> warnings;
};

}  // namespace pcbias
