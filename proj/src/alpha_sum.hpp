#pragma once

#include "pcbias/dyadic.hpp"
#include "pcbias/parity_check.hpp"

#include <cstdint>
#include <span>

namespace pcbias::detail {

struct AlphaSum {
  BigInt total;
  std::uint64_t steps = 0;  // table lookups actually performed
};

/// sum over all alpha of prod_c values[chi(c, alpha)], exactly.
/// values has 2^k entries indexed by the k-bit chi vector.
AlphaSum sum_over_alpha(std::span<const std::int64_t> values, const ChiMap& map, unsigned threads);

}  // namespace pcbias::detail
