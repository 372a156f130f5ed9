#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace pcbias {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number numerator / 2^log2_denominator.
///
/// Always kept canonical: the numerator is odd, or the value is zero and
/// log2_denominator is 0. Every bias in this library is such a number.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(std::int64_t value) : numerator_(value) {}  // NOLINT: implicit by intent

  /// numerator * 2^(-log2_scale); log2_scale may be negative.
  DyadicRational(BigInt numerator, std::int64_t log2_scale);

  const BigInt& numerator() const { return numerator_; }
  std::uint32_t log2_denominator() const { return log2_denominator_; }

  bool is_zero() const { return numerator_ == 0; }
  int sign() const { return numerator_.sign(); }

  DyadicRational abs() const;
  DyadicRational pow(std::uint64_t exponent) const;

  double to_double() const;
  /// log2 |value|; -infinity for zero.
  double log2_abs() const;

  /// "0", "-3", "1/4", "5/2^80" (denominators above 2^64 written as powers).
  std::string to_string() const;

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);
  DyadicRational operator-() const;

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  void normalize();

  BigInt numerator_ = 0;
  std::uint32_t log2_denominator_ = 0;
};

std::ostream& operator<<(std::ostream& os, const DyadicRational& value);

/// Smallest integer >= value.
BigInt ceil(const DyadicRational& value);

}  // namespace pcbias
