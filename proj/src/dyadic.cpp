#include "pcbias/dyadic.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pcbias {

namespace mp = boost::multiprecision;

DyadicRational::DyadicRational(BigInt numerator, std::int64_t log2_scale) : numerator_(std::move(numerator)) {
  if (log2_scale < 0) {
    numerator_ <<= static_cast<unsigned>(-log2_scale);
  } else {
    if (log2_scale > std::numeric_limits<std::uint32_t>::max())
      throw std::overflow_error("dyadic denominator exponent too large");
    log2_denominator_ = static_cast<std::uint32_t>(log2_scale);
  }
  normalize();
}

void DyadicRational::normalize() {
  if (numerator_ == 0) {
    log2_denominator_ = 0;
    return;
  }
  if (log2_denominator_ == 0) return;
  const unsigned shift = std::min<unsigned>(static_cast<unsigned>(mp::lsb(mp::abs(numerator_))), log2_denominator_);
  numerator_ >>= shift;  // exact: the low `shift` bits are zero
  log2_denominator_ -= shift;
}

DyadicRational DyadicRational::abs() const {
  DyadicRational r = *this;
  r.numerator_ = mp::abs(r.numerator_);
  return r;
}

DyadicRational DyadicRational::pow(std::uint64_t exponent) const {
  DyadicRational r;
  r.numerator_ = mp::pow(numerator_, static_cast<unsigned>(exponent));
  const std::uint64_t d = std::uint64_t{log2_denominator_} * exponent;
  if (d > std::numeric_limits<std::uint32_t>::max()) throw std::overflow_error("dyadic denominator exponent too large");
  r.log2_denominator_ = static_cast<std::uint32_t>(d);
  r.normalize();
  return r;
}

double DyadicRational::log2_abs() const {
  if (numerator_ == 0) return -std::numeric_limits<double>::infinity();
  const BigInt magnitude = mp::abs(numerator_);
  const unsigned top = static_cast<unsigned>(mp::msb(magnitude));
  // Keep 62 significant bits; the remainder is below double precision.
  const unsigned drop = top > 62 ? top - 62 : 0;
  const auto head = static_cast<std::uint64_t>(magnitude >> drop);
  return std::log2(static_cast<double>(head)) + drop - static_cast<double>(log2_denominator_);
}

double DyadicRational::to_double() const {
  if (numerator_ == 0) return 0.0;
  return sign() * std::exp2(log2_abs());
}

std::string DyadicRational::to_string() const {
  std::string text = numerator_.str();
  if (log2_denominator_ == 0) return text;
  if (log2_denominator_ <= 64) {
    const BigInt denominator = BigInt{1} << log2_denominator_;
    return text + "/" + denominator.str();
  }
  return text + "/2^" + std::to_string(log2_denominator_);
}

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  const std::uint32_t d = std::max(a.log2_denominator_, b.log2_denominator_);
  BigInt sum = (a.numerator_ << (d - a.log2_denominator_)) + (b.numerator_ << (d - b.log2_denominator_));
  return {std::move(sum), d};
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
  return {a.numerator_ * b.numerator_, std::int64_t{a.log2_denominator_} + b.log2_denominator_};
}

DyadicRational DyadicRational::operator-() const {
  DyadicRational r = *this;
  r.numerator_ = -r.numerator_;
  return r;
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const std::uint32_t d = std::max(a.log2_denominator_, b.log2_denominator_);
  const BigInt lhs = a.numerator_ << (d - a.log2_denominator_);
  const BigInt rhs = b.numerator_ << (d - b.log2_denominator_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const DyadicRational& value) { return os << value.to_string(); }

BigInt ceil(const DyadicRational& value) {
  const unsigned d = value.log2_denominator();
  if (d == 0) return value.numerator();
  // floor division by 2^d, then round up unless exact (never exact when d > 0).
  const BigInt& num = value.numerator();
  if (num >= 0) return (num >> d) + 1;
  return -(BigInt{-num} >> d);
}

}  // namespace pcbias
