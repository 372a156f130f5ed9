#include "alpha_sum.hpp"

#include "pcbias/threads.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <vector>

namespace pcbias::detail {

namespace {

namespace mp = boost::multiprecision;
using Int256 = mp::int256_t;

// Bits of alpha resolved through the inner lookup table.
constexpr int kInnerBits = 12;

struct Plan {
  std::span<const std::int64_t> values;
  std::uint32_t terms = 0;
  int inner_bits = 0;
  int outer_bits = 0;
  // contribution[b * terms + c]: chi(c) bits driven by alpha bit b.
  std::vector<std::uint32_t> contribution;
  // inner[lo * terms + c]: chi(c) restricted to the low inner_bits of alpha.
  std::vector<std::uint32_t> inner;
};

Plan make_plan(std::span<const std::int64_t> values, const ChiMap& map) {
  Plan plan;
  plan.values = values;
  plan.terms = map.terms();
  plan.inner_bits = std::min(map.alpha_bits, kInnerBits);
  plan.outer_bits = map.alpha_bits - plan.inner_bits;
  plan.contribution.assign(std::size_t(map.alpha_bits) * plan.terms, 0);
  for (std::uint32_t c = 0; c < plan.terms; ++c)
    for (int p = 0; p < map.k; ++p)
      plan.contribution[map.source[c * map.k + p] * plan.terms + c] |= std::uint32_t{1} << p;

  const std::uint32_t inner_count = std::uint32_t{1} << plan.inner_bits;
  plan.inner.assign(std::size_t(inner_count) * plan.terms, 0);
  for (std::uint32_t lo = 1; lo < inner_count; ++lo) {
    const std::uint32_t prev = lo & (lo - 1);
    const int bit = std::countr_zero(lo);
    for (std::uint32_t c = 0; c < plan.terms; ++c)
      plan.inner[lo * plan.terms + c] =
          plan.inner[prev * plan.terms + c] ^ plan.contribution[bit * plan.terms + c];
  }
  return plan;
}

BigInt to_big(const __int128& v) {
  const bool negative = v < 0;
  const unsigned __int128 m = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(m >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(m);
  return negative ? BigInt(-r) : r;
}
BigInt to_big(const Int256& v) { return BigInt(v); }
BigInt to_big(const BigInt& v) { return v; }

// Products are summed in Wide and moved to the exact total every
// flush_every additions, before Wide can overflow.
template <class Wide>
AlphaSum run_range(const Plan& plan, std::uint64_t outer_begin, std::uint64_t outer_end,
                   std::uint64_t flush_every) {
  AlphaSum result;
  Wide partial = 0;
  std::uint64_t pending = 0;
  std::vector<std::uint32_t> outer_chi(plan.terms);
  const std::uint32_t inner_count = std::uint32_t{1} << plan.inner_bits;
  const std::uint32_t terms = plan.terms;
  const std::int64_t* values = plan.values.data();

  for (std::uint64_t hi = outer_begin; hi < outer_end; ++hi) {
    std::ranges::fill(outer_chi, 0U);
    for (std::uint64_t rest = hi; rest != 0; rest &= rest - 1) {
      const auto bit = static_cast<std::size_t>(plan.inner_bits + std::countr_zero(rest));
      for (std::uint32_t c = 0; c < terms; ++c) outer_chi[c] ^= plan.contribution[bit * terms + c];
    }
    for (std::uint32_t lo = 0; lo < inner_count; ++lo) {
      const std::uint32_t* row = &plan.inner[std::size_t(lo) * terms];
      Wide product = values[outer_chi[0] ^ row[0]];
      std::uint32_t c = 1;
      for (; c < terms && product != 0; ++c) product *= values[outer_chi[c] ^ row[c]];
      result.steps += c;
      if (product == 0) continue;
      partial += product;
      if (++pending == flush_every) {
        result.total += to_big(partial);
        partial = 0;
        pending = 0;
      }
    }
  }
  result.total += to_big(partial);
  return result;
}

template <class Wide>
AlphaSum run(const Plan& plan, unsigned threads, std::uint64_t flush_every) {
  const std::uint64_t outer_count = std::uint64_t{1} << plan.outer_bits;
  auto parts = parallel_ranges(outer_count, threads, [&](std::uint64_t begin, std::uint64_t end) {
    return run_range<Wide>(plan, begin, end, flush_every);
  });
  AlphaSum sum;
  for (auto& part : parts) {
    sum.total += part.total;
    sum.steps += part.steps;
  }
  return sum;
}

}  // namespace

AlphaSum sum_over_alpha(std::span<const std::int64_t> values, const ChiMap& map, unsigned threads) {
  // Factor out the common power of two so products stay narrow.
  int shift = 64;
  std::uint64_t largest = 0;
  for (const std::int64_t v : values) {
    if (v == 0) continue;
    shift = std::min(shift, std::countr_zero(static_cast<std::uint64_t>(v)));
  }
  std::vector<std::int64_t> reduced(values.begin(), values.end());
  if (shift == 64) return {BigInt{0}, 0};
  for (std::int64_t& v : reduced) {
    v >>= shift;
    largest = std::max(largest, static_cast<std::uint64_t>(std::abs(v)));
  }

  const Plan plan = make_plan(reduced, map);
  if (threads == 0) threads = worker_count();
  // |product| < 2^product_bits
  const std::uint64_t product_bits = std::uint64_t(plan.terms) * std::bit_width(largest);
  auto flush_interval = [&](int capacity) {
    return std::uint64_t{1} << std::min<std::uint64_t>(62, capacity - product_bits);
  };

  AlphaSum sum;
  if (product_bits <= 120) sum = run<__int128>(plan, threads, flush_interval(126));
  else if (product_bits <= 248) sum = run<Int256>(plan, threads, flush_interval(254));
  else sum = run<BigInt>(plan, threads, 0);
  sum.total <<= static_cast<unsigned>(shift) * plan.terms;
  return sum;
}

}  // namespace pcbias::detail
