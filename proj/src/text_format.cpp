#include "pcbias/text_format.hpp"

#include "pcbias/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <vector>

namespace pcbias {

namespace {

std::size_t hex_digits(int n) { return std::max<std::size_t>(1, (std::size_t{1} << n) / 4); }

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

}  // namespace

BooleanFunction parse_truth_table_hex(std::string_view hex, int n) {
  if (n < 1 || n > BooleanFunction::kMaxVariables)
    throw ParseError("variable count " + std::to_string(n) + " outside 1.." +
                     std::to_string(BooleanFunction::kMaxVariables));
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  const std::size_t digits = hex_digits(n);
  if (hex.size() != digits)
    throw ParseError("truth table for n = " + std::to_string(n) + " needs " + std::to_string(digits) +
                     " hex digits, got " + std::to_string(hex.size()));
  const std::uint32_t size = std::uint32_t{1} << n;
  std::vector<std::uint8_t> bits(size);
  for (std::size_t pos = 0; pos < digits; ++pos) {
    const int value = hex_value(hex[pos]);
    if (value < 0) throw ParseError(std::string("invalid hex digit '") + hex[pos] + "'");
    const std::uint32_t base = static_cast<std::uint32_t>(4 * (digits - 1 - pos));
    for (int b = 0; b < 4; ++b) {
      if (!((value >> b) & 1)) continue;
      const std::uint32_t x = base + b;
      if (x >= size) throw ParseError("truth table sets bits beyond 2^n entries");
      bits[x] = 1;
    }
  }
  return BooleanFunction::from_bits(n, bits);
}

std::string to_truth_table_hex(const BooleanFunction& f) {
  const std::size_t digits = hex_digits(f.variables());
  std::string out(digits, '0');
  for (std::size_t pos = 0; pos < digits; ++pos) {
    const std::uint32_t base = static_cast<std::uint32_t>(4 * (digits - 1 - pos));
    int value = 0;
    for (int b = 0; b < 4; ++b)
      if (base + b < f.size() && f(base + b)) value |= 1 << b;
    out[pos] = "0123456789abcdef"[value];
  }
  return out;
}

namespace {

// One monomial as a variable mask; zero marks a factor 0.
struct Monomial {
  std::uint32_t mask = 0;
  bool zero = false;
};

class AnfParser {
 public:
  explicit AnfParser(std::string_view text) : text_(text) {}

  std::vector<Monomial> parse() {
    std::vector<Monomial> terms;
    terms.push_back(term());
    while (skip_space(), pos_ < text_.size()) {
      expect('+');
      terms.push_back(term());
    }
    return terms;
  }

  int max_variable() const { return max_variable_; }

 private:
  Monomial term() {
    Monomial m = factor();
    while (skip_space(), pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      const Monomial next = factor();
      m.mask |= next.mask;
      m.zero = m.zero || next.zero;
    }
    return m;
  }

  Monomial factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a term");
    const char ch = text_[pos_];
    if (ch == '0' || ch == '1') {
      ++pos_;
      return {0, ch == '0'};
    }
    if (ch != 'x' && ch != 'X') fail("expected x<i>, 0 or 1");
    ++pos_;
    int index = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), index);
    if (ec != std::errc{}) fail("expected a variable index");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (index < 1 || index > BooleanFunction::kMaxVariables)
      throw ParseError("unknown variable x" + std::to_string(index));
    max_variable_ = std::max(max_variable_, index);
    return {std::uint32_t{1} << (index - 1), false};
  }

  void expect(char ch) {
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("ANF parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int max_variable_ = 0;
};

// In-place binary Moebius transform: truth table <-> ANF coefficients.
void moebius(std::vector<std::uint8_t>& v) {
  for (std::size_t half = 1; half < v.size(); half <<= 1)
    for (std::size_t block = 0; block < v.size(); block += 2 * half)
      for (std::size_t i = block; i < block + half; ++i) v[i + half] ^= v[i];
}

}  // namespace

BooleanFunction parse_anf(std::string_view text, std::optional<int> n) {
  AnfParser parser(text);
  const std::vector<Monomial> terms = parser.parse();
  const int arity = n.value_or(std::max(1, parser.max_variable()));
  if (arity < 1 || arity > BooleanFunction::kMaxVariables)
    throw ParseError("variable count " + std::to_string(arity) + " outside 1.." +
                     std::to_string(BooleanFunction::kMaxVariables));
  if (parser.max_variable() > arity)
    throw ParseError("unknown variable x" + std::to_string(parser.max_variable()) + " for n = " +
                     std::to_string(arity));
  std::vector<std::uint8_t> coeffs(std::size_t{1} << arity, 0);
  for (const Monomial& m : terms)
    if (!m.zero) coeffs[m.mask] ^= 1;
  moebius(coeffs);
  return BooleanFunction::from_bits(arity, coeffs);
}

std::string to_anf(const BooleanFunction& f) {
  std::vector<std::uint8_t> coeffs(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) coeffs[x] = f(x) ? 1 : 0;
  moebius(coeffs);
  // Constant first, then by degree, then lexicographically by variables.
  std::vector<std::uint32_t> monomials;
  for (std::uint32_t m = 0; m < f.size(); ++m)
    if (coeffs[m]) monomials.push_back(m);
  std::stable_sort(monomials.begin(), monomials.end(), [](std::uint32_t a, std::uint32_t b) {
    const int wa = std::popcount(a), wb = std::popcount(b);
    if (wa != wb) return wa < wb;
    // lowest differing variable present in the earlier monomial
    const std::uint32_t diff = a ^ b;
    return (a & diff & (~diff + 1)) != 0;
  });
  if (monomials.empty()) return "0";
  std::string out;
  for (const std::uint32_t m : monomials) {
    if (!out.empty()) out += " + ";
    if (m == 0) {
      out += "1";
      continue;
    }
    bool first = true;
    for (int j = 0; j < f.variables(); ++j) {
      if (!((m >> j) & 1U)) continue;
      if (!first) out += "*";
      out += "x" + std::to_string(j + 1);
      first = false;
    }
  }
  return out;
}

}  // namespace pcbias
