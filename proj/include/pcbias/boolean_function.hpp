#pragma once

#include "pcbias/dyadic.hpp"

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pcbias {

/// Truth table of a Boolean function of n variables, 1 <= n <= 24.
///
/// Entry x holds f(x_1, ..., x_n) where x = sum_j x_j * 2^(j-1): variable x_1
/// is the least significant index bit. Variables are 0-based in the C++ API
/// (bit j of the index is variable j), 1-based in text formats.
class BooleanFunction {
 public:
  static constexpr int kMaxVariables = 24;

  /// The constant-zero function of n variables.
  explicit BooleanFunction(int n);

  /// bits[x] is f(x); bits.size() must be 2^n and every entry 0 or 1.
  static BooleanFunction from_bits(int n, std::span<const std::uint8_t> bits);

  template <class Predicate>
    requires std::predicate<Predicate, std::uint32_t>
  static BooleanFunction from_predicate(int n, Predicate&& predicate) {
    BooleanFunction f(n);
    for (std::uint32_t x = 0; x < f.size(); ++x)
      if (predicate(x)) f.words_[x >> 6] |= std::uint64_t{1} << (x & 63);
    return f;
  }

  /// Linear function a.x.
  static BooleanFunction linear(int n, std::uint32_t mask);

  int variables() const { return n_; }
  std::uint32_t size() const { return std::uint32_t{1} << n_; }

  bool operator()(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }

  /// Relabels variables: variable i of the result is variable order[i] of
  /// this function. order must be a permutation of 0..n-1.
  BooleanFunction permuted(std::span<const int> order) const;

  /// Pointwise XOR. Both functions must have the same arity.
  BooleanFunction operator^(const BooleanFunction& other) const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

/// All 2^n Walsh coefficients W(a) = sum_x (-1)^(f(x) + a.x).
struct WalshSpectrum {
  int n = 0;
  std::vector<std::int32_t> coeffs;

  std::int32_t operator[](std::uint32_t mask) const { return coeffs[mask]; }
};

/// Restriction biases for the cosets a + V_{n-k}, a < 2^k, where V_{n-k} is
/// spanned by the high n-k index bits. sums[a] is the signed count
/// sum_y (-1)^f(a + y*2^k), so the bias is sums[a] / 2^(n-k).
struct RestrictionTable {
  int k = 0;
  int log2_denominator = 0;
  std::vector<std::int64_t> sums;

  DyadicRational bias(std::uint32_t a) const { return {sums.at(a), log2_denominator}; }
};

/// In-place Walsh-Hadamard butterfly on 2^m entries. Applying it twice
/// multiplies the input by 2^m.
template <std::signed_integral T>
void walsh_butterfly(std::span<T> values) {
  const std::size_t size = values.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const T u = values[i];
        const T v = values[i + half];
        values[i] = u + v;
        values[i + half] = u - v;
      }
    }
  }
}

/// 2^(-n) sum_x (-1)^f(x).
DyadicRational bias(const BooleanFunction& f);

/// O(n 2^n) fast transform.
WalshSpectrum walsh_transform(const BooleanFunction& f);

/// E(f + phi_a) = W(a) / 2^n. Throws ValidationError when a >= 2^n.
DyadicRational linear_bias(const WalshSpectrum& spectrum, std::uint32_t mask);

/// Throws ValidationError unless 0 < k <= n.
RestrictionTable restriction_table(const BooleanFunction& f, int k);

/// Largest t with W(a) = 0 for every mask of weight <= t (a = 0 included);
/// -1 when f is unbalanced.
int resiliency_order(const WalshSpectrum& spectrum);
int resiliency_order(const BooleanFunction& f);

/// Same scan without the balancedness condition. Constant functions have
/// order n.
int correlation_immunity_order(const WalshSpectrum& spectrum);

/// W / 2^n when every coefficient lies in {0, +W, -W}; nullopt otherwise.
std::optional<DyadicRational> plateaued_amplitude(const WalshSpectrum& spectrum);
std::optional<DyadicRational> plateaued_amplitude(const BooleanFunction& f);

}  // namespace pcbias
