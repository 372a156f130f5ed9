#include "pcbias/cli/json_io.hpp"

#include "pcbias/error.hpp"
#include "pcbias/text_format.hpp"

#include <cmath>
#include <string>

namespace pcbias::cli {

namespace {

template <class T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field \"") + name + "\": " + e.what());
  }
}

std::uint32_t integer_or_hex(const json& doc, const char* name) {
  const json& v = doc.at(name);
  if (v.is_number_unsigned()) return v.get<std::uint32_t>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::string text = v.get<std::string>();
      const unsigned long value = std::stoul(text, &used, 0);
      if (used == text.size()) return static_cast<std::uint32_t>(value);
    } catch (const std::exception&) {
    }
  }
  throw ParseError(std::string("field \"") + name + "\" must be a non-negative integer or \"0x..\" string");
}

}  // namespace

ParityCheckSpec spec_from_json(const json& doc, std::optional<std::vector<std::uint64_t>> periods) {
  if (!doc.is_object()) throw ParseError("spec must be a JSON object");
  std::vector<std::uint64_t> resolved;
  if (doc.contains("periods")) resolved = field<std::vector<std::uint64_t>>(doc, "periods");
  else if (periods) resolved = *periods;
  else throw ParseError("missing field \"periods\"");

  const auto blocks_1 = field<std::vector<std::vector<int>>>(doc, "blocks");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : blocks_1) {
    std::vector<int> zero_based;
    for (const int v : b) zero_based.push_back(v - 1);
    blocks.push_back(std::move(zero_based));
  }
  std::vector<std::uint64_t> multipliers(blocks.size(), 1);
  if (doc.contains("multipliers")) multipliers = field<std::vector<std::uint64_t>>(doc, "multipliers");
  return {std::move(resolved), std::move(blocks), std::move(multipliers)};
}

json spec_to_json(const ParityCheckSpec& spec) {
  json blocks = json::array();
  for (const auto& b : spec.blocks()) {
    json one = json::array();
    for (const int v : b) one.push_back(v + 1);
    blocks.push_back(one);
  }
  return {
      {"periods", std::vector<std::uint64_t>(spec.periods().begin(), spec.periods().end())},
      {"blocks", blocks},
      {"multipliers", std::vector<std::uint64_t>(spec.multipliers().begin(), spec.multipliers().end())},
      {"moduli", std::vector<std::uint64_t>(spec.block_moduli().begin(), spec.block_moduli().end())},
      {"offsets", std::vector<std::uint64_t>(spec.offsets().begin(), spec.offsets().end())},
      {"k", spec.fixed_variables()},
      {"s", spec.block_count()},
  };
}

BooleanFunction function_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("function must be a JSON object");
  if (doc.contains("tt")) return parse_truth_table_hex(field<std::string>(doc, "tt"), field<int>(doc, "n"));
  if (doc.contains("anf")) {
    std::optional<int> n;
    if (doc.contains("n")) n = field<int>(doc, "n");
    return parse_anf(field<std::string>(doc, "anf"), n);
  }
  throw ParseError("function needs \"tt\" (with \"n\") or \"anf\"");
}

json function_to_json(const BooleanFunction& f) {
  json doc = {{"n", f.variables()}, {"tt", to_truth_table_hex(f)}};
  if (f.variables() <= 12) doc["anf"] = to_anf(f);
  return doc;
}

Generator generator_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("generator config must be a JSON object");
  if (!doc.contains("combiner")) throw ParseError("missing field \"combiner\"");
  BooleanFunction combiner = function_from_json(doc.at("combiner"));
  if (!doc.contains("devices") || !doc.at("devices").is_array()) throw ParseError("missing array \"devices\"");

  std::vector<PeriodicDevice> devices;
  for (const json& d : doc.at("devices")) {
    const auto type = field<std::string>(d, "type");
    if (type == "explicit") {
      ExplicitSequence seq;
      const json& bits = d.at("bits");
      if (bits.is_string()) {
        for (const char ch : bits.get<std::string>()) {
          if (ch != '0' && ch != '1') throw ParseError("explicit bits must be '0' or '1'");
          seq.bits.push_back(ch == '1');
        }
      } else {
        seq.bits = field<std::vector<std::uint8_t>>(d, "bits");
      }
      devices.emplace_back(std::move(seq));
    } else if (type == "lfsr") {
      devices.emplace_back(Lfsr{field<int>(d, "length"), integer_or_hex(d, "taps"), integer_or_hex(d, "state")});
    } else if (type == "nlfsr") {
      const int length = field<int>(d, "length");
      devices.emplace_back(
          Nlfsr{length, parse_truth_table_hex(field<std::string>(d, "feedback"), length), integer_or_hex(d, "state")});
    } else {
      throw ParseError("unknown device type \"" + type + "\"");
    }
  }
  return {std::move(devices), std::move(combiner)};
}

json to_json(const DyadicRational& value) {
  return {
      {"numerator", value.numerator().str()},
      {"log2_denominator", value.log2_denominator()},
      {"value", value.to_string()},
      {"approx", value.to_double()},
  };
}

json mask_to_json(std::uint32_t mask) {
  json vars = json::array();
  for (int v = 0; v < 32; ++v)
    if ((mask >> v) & 1U) vars.push_back(v + 1);
  return vars;
}

json to_json(const IndependenceReport& report) {
  return {{"verdict", std::string(to_string(report.verdict))}, {"reasons", report.reasons}};
}

namespace {

json optional_rational(const std::optional<DyadicRational>& value) {
  return value ? to_json(*value) : json(nullptr);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const BiasReport& report) {
  return {
      {"method", std::string(to_string(report.method))},
      {"exact", optional_rational(report.exact)},
      {"log2_bias", report.exact ? finite_or_null(report.log2_bias) : json(nullptr)},
      {"lower_bound", to_json(report.lower_bound)},
      {"lower_bound_mask", mask_to_json(report.lower_bound_mask)},
      {"plateaued_bound", optional_rational(report.plateaued_bound)},
      {"equality_condition_met",
       report.equality_condition_met ? json(*report.equality_condition_met) : json(nullptr)},
      {"op_count", report.op_count},
      {"precompute_evaluations", report.precompute_evaluations},
      {"independence", std::string(to_string(report.independence))},
      {"warnings", report.warnings},
  };
}

json to_json(const BiasEstimate& estimate) {
  return {
      {"estimator", std::string(to_string(estimate.estimator))},
      {"mean", estimate.mean},
      {"standard_error", estimate.standard_error},
      {"interval99", {estimate.interval_low, estimate.interval_high}},
      {"trials", estimate.trials},
      {"seed", estimate.seed},
      {"signed_sum", estimate.signed_sum},
  };
}

json to_json(const AttackCost& cost) {
  return {{"time", cost.time.str()}, {"data", cost.data.str()}};
}

}  // namespace pcbias::cli
