#include "pcbias/boolean_function.hpp"

#include "pcbias/error.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace pcbias {

namespace {

void check_arity(int n) {
  if (n < 1 || n > BooleanFunction::kMaxVariables)
    throw ValidationError("variable count " + std::to_string(n) + " outside 1.." +
                          std::to_string(BooleanFunction::kMaxVariables));
}

std::int64_t signed_sum(const BooleanFunction& f) {
  std::int64_t ones = 0;
  for (const std::uint64_t w : f.words()) ones += std::popcount(w);
  return static_cast<std::int64_t>(f.size()) - 2 * ones;
}

}  // namespace

BooleanFunction::BooleanFunction(int n) : n_(n) {
  check_arity(n);
  words_.assign((std::size_t{1} << n) / 64 + ((n < 6) ? 1 : 0), 0);
}

BooleanFunction BooleanFunction::from_bits(int n, std::span<const std::uint8_t> bits) {
  BooleanFunction f(n);
  if (bits.size() != f.size())
    throw ValidationError("truth table has " + std::to_string(bits.size()) + " entries, expected " +
                          std::to_string(f.size()));
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (bits[x] > 1) throw ValidationError("truth table entries must be 0 or 1");
    if (bits[x]) f.words_[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return f;
}

BooleanFunction BooleanFunction::linear(int n, std::uint32_t mask) {
  return from_predicate(n, [mask](std::uint32_t x) { return std::popcount(x & mask) & 1; });
}

BooleanFunction BooleanFunction::permuted(std::span<const int> order) const {
  if (static_cast<int>(order.size()) != n_) throw ValidationError("permutation size mismatch");
  std::uint32_t seen = 0;
  for (const int v : order) {
    if (v < 0 || v >= n_ || (seen >> v) & 1U) throw ValidationError("not a permutation of the variables");
    seen |= 1U << v;
  }
  return from_predicate(n_, [&](std::uint32_t y) {
    std::uint32_t x = 0;
    for (int i = 0; i < n_; ++i) x |= ((y >> i) & 1U) << order[i];
    return (*this)(x);
  });
}

BooleanFunction BooleanFunction::operator^(const BooleanFunction& other) const {
  if (other.n_ != n_) throw ValidationError("XOR of functions with different arity");
  BooleanFunction r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] ^= other.words_[i];
  return r;
}

DyadicRational bias(const BooleanFunction& f) { return {signed_sum(f), f.variables()}; }

WalshSpectrum walsh_transform(const BooleanFunction& f) {
  WalshSpectrum spectrum{f.variables(), std::vector<std::int32_t>(f.size())};
  for (std::uint32_t x = 0; x < f.size(); ++x) spectrum.coeffs[x] = f(x) ? -1 : 1;
  walsh_butterfly(std::span<std::int32_t>(spectrum.coeffs));
  return spectrum;
}

DyadicRational linear_bias(const WalshSpectrum& spectrum, std::uint32_t mask) {
  if (mask >= spectrum.coeffs.size())
    throw ValidationError("mask " + std::to_string(mask) + " out of range for n = " + std::to_string(spectrum.n));
  return {spectrum.coeffs[mask], spectrum.n};
}

RestrictionTable restriction_table(const BooleanFunction& f, int k) {
  const int n = f.variables();
  if (k < 1 || k > n) throw ValidationError("restriction size k = " + std::to_string(k) + " outside 1..n");
  RestrictionTable table{k, n - k, std::vector<std::int64_t>(std::size_t{1} << k, 0)};
  const std::uint32_t low = (std::uint32_t{1} << k) - 1;
  for (std::uint32_t x = 0; x < f.size(); ++x) table.sums[x & low] += f(x) ? -1 : 1;
  return table;
}

namespace {

// Smallest Hamming weight of a mask with a nonzero coefficient, optionally
// ignoring mask 0; n + 1 when there is none.
int lowest_nonzero_weight(const WalshSpectrum& spectrum, bool skip_zero_mask) {
  int best = spectrum.n + 1;
  for (std::uint32_t a = skip_zero_mask ? 1 : 0; a < spectrum.coeffs.size(); ++a)
    if (spectrum.coeffs[a] != 0) best = std::min(best, std::popcount(a));
  return best;
}

}  // namespace

int resiliency_order(const WalshSpectrum& spectrum) {
  if (spectrum.coeffs[0] != 0) return -1;
  return lowest_nonzero_weight(spectrum, false) - 1;
}

int resiliency_order(const BooleanFunction& f) { return resiliency_order(walsh_transform(f)); }

int correlation_immunity_order(const WalshSpectrum& spectrum) {
  return std::min(spectrum.n, lowest_nonzero_weight(spectrum, true) - 1);
}

std::optional<DyadicRational> plateaued_amplitude(const WalshSpectrum& spectrum) {
  std::int32_t amplitude = 0;
  for (const std::int32_t w : spectrum.coeffs) {
    if (w == 0) continue;
    const std::int32_t m = std::abs(w);
    if (amplitude == 0) amplitude = m;
    else if (m != amplitude) return std::nullopt;
  }
  return DyadicRational{amplitude, spectrum.n};
}

std::optional<DyadicRational> plateaued_amplitude(const BooleanFunction& f) {
  return plateaued_amplitude(walsh_transform(f));
}

}  // namespace pcbias
