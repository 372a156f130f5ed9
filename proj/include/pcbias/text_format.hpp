#pragma once

#include "pcbias/boolean_function.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace pcbias {

// Hex truth tables
// ----------------
// The table is read as the 2^n-bit integer sum_x f(x) * 2^x and written in
// lowercase hex, most significant digit first, zero-padded to
// max(1, 2^n / 4) digits. Equivalently, f(x) is bit (x mod 4) of the digit at
// string position (2^n - 1 - x) / 4. For n = 2, "8" is x1*x2 and "6" is
// x1 + x2. Parsing accepts either letter case.

BooleanFunction parse_truth_table_hex(std::string_view hex, int n);
std::string to_truth_table_hex(const BooleanFunction& f);

// Algebraic normal form
// ---------------------
// Sums of monomials over GF(2): "x1*x2 + x3 + 1". Variables are x1..xn,
// '+' is XOR, '*' is AND, "0" and "1" are constants. When n is omitted it is
// the largest variable index present (at least 1).

BooleanFunction parse_anf(std::string_view text, std::optional<int> n = std::nullopt);
std::string to_anf(const BooleanFunction& f);

}  // namespace pcbias
