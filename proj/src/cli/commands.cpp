#include "pcbias/cli/commands.hpp"

#include "pcbias/bounds.hpp"
#include "pcbias/cli/cross_check.hpp"
#include "pcbias/cli/json_io.hpp"
#include "pcbias/error.hpp"
#include "pcbias/exact_bias.hpp"
#include "pcbias/text_format.hpp"

#include <CLI11.hpp>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pcbias::cli {

namespace {

BooleanFunction load_function(const FunctionSource& source) {
  const bool has_tt = !source.tt.empty();
  const bool has_anf = !source.anf.empty();
  if (has_tt == has_anf) throw ParseError("give exactly one of --tt or --anf");
  if (has_tt) {
    if (!source.n) throw ParseError("--tt needs --n");
    return parse_truth_table_hex(source.tt, *source.n);
  }
  return parse_anf(source.anf, source.n);
}

json load_json(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text_or_path);
    if (!in) throw ParseError("cannot read " + text_or_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

ParityCheckSpec load_spec(const std::string& text_or_path, const BooleanFunction& f) {
  ParityCheckSpec spec = spec_from_json(load_json(text_or_path));
  if (spec.variables() != f.variables())
    throw ValidationError("spec lists " + std::to_string(spec.variables()) + " periods for a function of " +
                          std::to_string(f.variables()) + " variables");
  return spec;
}

json header(const char* command, const BooleanFunction& f, const ParityCheckSpec& spec) {
  return {{"command", command},
          {"function", function_to_json(f)},
          {"spec", spec_to_json(spec)},
          {"independence", to_json(spec.independence())}};
}

json closed_form_json(const WalshSpectrum& spectrum, const ParityCheckSpec& spec) {
  const auto closed = closed_form_single_coefficient(spectrum, spec);
  if (!closed) return nullptr;
  return {{"value", to_json(*closed->exact)}, {"mask", mask_to_json(closed->lower_bound_mask)}};
}

void add_attack_cost(json& doc, const std::optional<DyadicRational>& exact, const ParityCheckSpec& spec) {
  doc["attack_cost"] = exact && exact->sign() > 0 ? to_json(attack_cost(*exact, spec)) : json(nullptr);
}

void merge_plateaued(json& doc, const WalshSpectrum& spectrum, const ParityCheckSpec& spec) {
  if (const auto plateaued = plateaued_bound(spectrum, spec)) {
    doc["plateaued_bound"] = to_json(*plateaued->plateaued_bound);
    doc["equality_condition_met"] = *plateaued->equality_condition_met;
  }
}

json run_analyze(const AnalyzeCommand& cmd) {
  const BooleanFunction f = load_function(cmd.function);
  const WalshSpectrum spectrum = walsh_transform(f);
  std::int64_t max_abs = 0;
  std::uint32_t max_mask = 0;
  std::uint64_t nonzero = 0;
  for (std::uint32_t a = 0; a < spectrum.coeffs.size(); ++a) {
    const std::int64_t m = std::abs(spectrum[a]);
    nonzero += m != 0;
    if (m > max_abs) {
      max_abs = m;
      max_mask = a;
    }
  }
  const auto amplitude = plateaued_amplitude(spectrum);
  return {
      {"command", "analyze"},
      {"function", function_to_json(f)},
      {"bias", to_json(bias(f))},
      {"resiliency_order", resiliency_order(spectrum)},
      {"correlation_immunity_order", correlation_immunity_order(spectrum)},
      {"plateaued_amplitude", amplitude ? to_json(*amplitude) : json(nullptr)},
      {"walsh", {{"max_abs", max_abs}, {"max_mask", mask_to_json(max_mask)}, {"nonzero", nonzero}}},
  };
}

json run_bias(const BiasCommand& cmd) {
  const BooleanFunction f = load_function(cmd.function);
  const ParityCheckSpec spec = load_spec(cmd.spec, f);
  // auto resolves to walsh only when a spectrum is already at hand.
  std::optional<WalshSpectrum> spectrum;
  BiasReport report;
  switch (cmd.method) {
    case MethodSelector::walsh:
      spectrum = walsh_transform(f);
      report = exact_bias_walsh(f, *spectrum, spec);
      break;
    case MethodSelector::automatic:
      report = spectrum ? exact_bias_walsh(f, *spectrum, spec) : exact_bias_restrictions(f, spec);
      break;
    case MethodSelector::restriction:
      report = exact_bias_restrictions(f, spec);
      break;
    case MethodSelector::oracle:
      report = brute_force_oracle(f, spec);
      break;
  }
  if (!spectrum) spectrum = walsh_transform(f);

  json doc = header("bias", f, spec);
  doc.update(to_json(report));
  doc["independence"] = to_json(spec.independence());
  merge_plateaued(doc, *spectrum, spec);
  doc["closed_form"] = closed_form_json(*spectrum, spec);
  add_attack_cost(doc, report.exact, spec);
  return doc;
}

json run_bound(const BoundCommand& cmd) {
  const BooleanFunction f = load_function(cmd.function);
  const ParityCheckSpec spec = load_spec(cmd.spec, f);
  const WalshSpectrum spectrum = walsh_transform(f);
  const LinearBound linear = lower_bound_linear(spectrum, spec);

  json doc = header("bound", f, spec);
  doc["lower_bound"] = to_json(linear.value);
  doc["lower_bound_mask"] = mask_to_json(linear.mask);
  doc["lower_bound_linear_bias"] = to_json(linear.linear_bias);
  doc["separable_bound"] = nullptr;
  if (!cmd.approximation_anf.empty()) {
    const auto g = SeparableApproximation::decompose(parse_anf(cmd.approximation_anf, spec.variables()), spec);
    doc["separable_bound"] = to_json(lower_bound_separable(f, g, spec));
  }
  doc["plateaued_bound"] = nullptr;
  doc["equality_condition_met"] = nullptr;
  merge_plateaued(doc, spectrum, spec);
  doc["closed_form"] = closed_form_json(spectrum, spec);
  return doc;
}

json run_oracle(const OracleCommand& cmd) {
  const BooleanFunction f = load_function(cmd.function);
  const ParityCheckSpec spec = load_spec(cmd.spec, f);
  const BiasReport report = brute_force_oracle(f, spec);
  json doc = header("oracle", f, spec);
  doc.update(to_json(report));
  doc["independence"] = to_json(spec.independence());
  add_attack_cost(doc, report.exact, spec);
  return doc;
}

json run_cross_check(const CrossCheckCommand& cmd) {
  const BooleanFunction f = load_function(cmd.function);
  const ParityCheckSpec spec = load_spec(cmd.spec, f);
  const CrossCheckResult result = cross_check(f, spec);
  json checks = json::array();
  json violations = json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    if (!c.ok)
      violations.push_back({{"check", c.name},
                            {"detail", c.detail},
                            {"function", function_to_json(f)},
                            {"spec", spec_to_json(spec)}});
  }
  json doc = header("cross-check", f, spec);
  doc["verdict"] = std::string(to_string(result.verdict));
  doc["reason"] = result.reason;
  doc["exact"] = result.exact ? to_json(*result.exact) : json(nullptr);
  doc["checks"] = checks;
  doc["violations"] = violations;
  return doc;
}

json run_simulate(const SimulateCommand& cmd) {
  const Generator generator = generator_from_json(load_json(cmd.generator));
  const ParityCheckSpec spec = spec_from_json(load_json(cmd.spec), generator.periods());
  const BiasEstimate estimate = empirical_bias(generator, spec, cmd.trials, cmd.seed, cmd.estimator);
  const BooleanFunction& f = generator.combiner();

  json doc = header("simulate", f, spec);
  doc["estimate"] = to_json(estimate);
  doc["exact"] = nullptr;
  doc["formula"] = nullptr;
  doc["true_bias"] = nullptr;
  doc["deviation_sigma"] = nullptr;
  json flags = json::array();

  std::optional<DyadicRational> reference;
  const int alpha_bits = spec.fixed_variables() << (spec.block_count() - 1);
  if (alpha_bits <= kExactAlphaBudget) {
    const BiasReport formula = exact_bias_walsh(f, spec, {.enforce_independence = false});
    if (spec.independence().verdict == Independence::fail) {
      doc["formula"] = to_json(*formula.exact);
      flags.push_back("independence FAIL: the exact formula does not apply to this spec");
    } else {
      doc["exact"] = to_json(*formula.exact);
      reference = formula.exact;
    }
    if (estimate.standard_error > 0) {
      const double sigma = (estimate.mean - formula.exact->to_double()) / estimate.standard_error;
      if (std::abs(sigma) > 3)
        flags.push_back("estimate is " + std::to_string(sigma) + " standard errors from the formula value");
    }
  }
  if (relation_free_bits(spec) <= kOracleBitBudget) {
    const DyadicRational truth = enumerate_relation_bias(f, spec);
    doc["true_bias"] = to_json(truth);
    reference = truth;
  }
  if (reference && estimate.standard_error > 0)
    doc["deviation_sigma"] = (estimate.mean - reference->to_double()) / estimate.standard_error;
  if (cmd.estimator != Estimator::random_sequences)
    flags.push_back(std::string(to_string(cmd.estimator)) +
                    " estimates depend on the device contents; exact values assume random sequences");
  doc["flags"] = flags;
  return doc;
}

void print_pretty(const json& doc, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : doc.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object() && value.contains("value") && value.contains("log2_denominator")) {
      const double approx = value["approx"].get<double>();
      out << name << ": " << value["value"].get<std::string>();
      if (approx > 0) out << "  (2^" << std::log2(approx) << ")";
      out << '\n';
    } else if (value.is_object()) {
      print_pretty(value, out, name);
    } else if (value.is_string()) {
      out << name << ": " << value.get<std::string>() << '\n';
    } else {
      out << name << ": " << value.dump() << '\n';
    }
  }
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot write " + tmp.string());
    file << text;
    if (!file.flush()) throw ValidationError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

void add_function_options(CLI::App* sub, FunctionSource& source) {
  sub->add_option("--tt", source.tt, "truth table in hex (bit x = f(x), most significant digit first)");
  sub->add_option("--anf", source.anf, "algebraic normal form, e.g. 'x1*x2 + x3'");
  sub->add_option("--n", source.n, "number of variables");
}

}  // namespace

int run(const Invocation& invocation, std::ostream& out, std::ostream& err) {
  try {
    const json doc = std::visit(
        [](const auto& cmd) -> json {
          using T = std::decay_t<decltype(cmd)>;
          if constexpr (std::is_same_v<T, AnalyzeCommand>) return run_analyze(cmd);
          else if constexpr (std::is_same_v<T, BiasCommand>) return run_bias(cmd);
          else if constexpr (std::is_same_v<T, BoundCommand>) return run_bound(cmd);
          else if constexpr (std::is_same_v<T, SimulateCommand>) return run_simulate(cmd);
          else if constexpr (std::is_same_v<T, OracleCommand>) return run_oracle(cmd);
          else return run_cross_check(cmd);
        },
        invocation.command);
    std::ostringstream text;
    if (invocation.pretty) print_pretty(doc, text);
    else text << doc.dump(2) << '\n';
    if (invocation.out_path.empty()) out << text.str();
    else write_atomically(invocation.out_path, text.str());
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and bounded biases of parity-check relations over combination generators", "pcbias"};
  app.require_subcommand(1);
  app.fallthrough();
  Invocation invocation;
  app.add_flag("--pretty", invocation.pretty, "human-readable summary instead of JSON");
  app.add_option("--out", invocation.out_path, "write the report to FILE");

  AnalyzeCommand analyze;
  BiasCommand bias_cmd;
  BoundCommand bound;
  SimulateCommand simulate;
  OracleCommand oracle;
  CrossCheckCommand cross;

  const std::map<std::string, MethodSelector> methods{{"walsh", MethodSelector::walsh},
                                                      {"restriction", MethodSelector::restriction},
                                                      {"oracle", MethodSelector::oracle},
                                                      {"auto", MethodSelector::automatic}};
  const std::map<std::string, Estimator> estimators{{"random-sequences", Estimator::random_sequences},
                                                    {"random-phases", Estimator::random_phases},
                                                    {"sliding-window", Estimator::sliding_window}};

  auto* sub = app.add_subcommand("analyze", "spectral summary of a Boolean function");
  add_function_options(sub, analyze.function);

  sub = app.add_subcommand("bias", "exact bias of a parity-check relation");
  add_function_options(sub, bias_cmd.function);
  sub->add_option("--spec", bias_cmd.spec, "parity-check spec (JSON file or inline JSON)")->required();
  sub->add_option("--method", bias_cmd.method, "walsh | restriction | oracle | auto")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));

  sub = app.add_subcommand("bound", "lower bounds and closed forms");
  add_function_options(sub, bound.function);
  sub->add_option("--spec", bound.spec, "parity-check spec (JSON file or inline JSON)")->required();
  sub->add_option("--approx", bound.approximation_anf, "separable approximation g in ANF");

  sub = app.add_subcommand("simulate", "empirical bias from simulated keystreams");
  sub->add_option("--generator", simulate.generator, "generator config (JSON file or inline JSON)")->required();
  sub->add_option("--spec", simulate.spec, "parity-check spec (JSON file or inline JSON)")->required();
  sub->add_option("--trials", simulate.trials, "number of relation evaluations");
  sub->add_option("--seed", simulate.seed, "RNG seed");
  std::string estimator_name = "random-sequences";
  sub->add_option("--estimator", estimator_name, "random-sequences | random-phases | sliding-window")
      ->check(CLI::IsMember(estimators));

  sub = app.add_subcommand("oracle", "brute-force bias by enumeration");
  add_function_options(sub, oracle.function);
  sub->add_option("--spec", oracle.spec, "parity-check spec (JSON file or inline JSON)")->required();

  sub = app.add_subcommand("cross-check", "run every method and check their consistency");
  add_function_options(sub, cross.function);
  sub->add_option("--spec", cross.spec, "parity-check spec (JSON file or inline JSON)")->required();

  std::vector<const char*> argv{"pcbias"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "analyze") invocation.command = analyze;
  else if (name == "bias") invocation.command = bias_cmd;
  else if (name == "bound") invocation.command = bound;
  else if (name == "simulate") {
    simulate.estimator = estimators.at(estimator_name);
    invocation.command = simulate;
  }
  else if (name == "oracle") invocation.command = oracle;
  else invocation.command = cross;
  return run(invocation, out, err);
}

}  // namespace pcbias::cli
