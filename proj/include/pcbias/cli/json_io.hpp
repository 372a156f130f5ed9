#pragma once

#include "pcbias/bias_report.hpp"
#include "pcbias/boolean_function.hpp"
#include "pcbias/parity_check.hpp"
#include "pcbias/seqgen.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace pcbias::cli {

using nlohmann::json;

// Variables are 1-based in every JSON document.

/// {"periods": [T_1..T_n], "blocks": [[vars]...], "multipliers": [q_1..q_s]}.
/// multipliers default to 1; periods may be omitted when `periods` is given.
ParityCheckSpec spec_from_json(const json& doc, std::optional<std::vector<std::uint64_t>> periods = std::nullopt);
json spec_to_json(const ParityCheckSpec& spec);

/// {"tt": HEX, "n": N} or {"anf": TEXT[, "n": N]}.
BooleanFunction function_from_json(const json& doc);
json function_to_json(const BooleanFunction& f);

/// {"combiner": function, "devices": [device...]} with devices
///   {"type": "explicit", "bits": [0, 1, ...] | "0110..."}
///   {"type": "lfsr", "length": L, "taps": int | "0x..", "state": int | "0x.."}
///   {"type": "nlfsr", "length": L, "feedback": HEX, "state": int | "0x.."}
Generator generator_from_json(const json& doc);

json to_json(const DyadicRational& value);
json mask_to_json(std::uint32_t mask);
json to_json(const IndependenceReport& report);
json to_json(const BiasReport& report);
json to_json(const BiasEstimate& estimate);
json to_json(const AttackCost& cost);

}  // namespace pcbias::cli
