#pragma once

#include "pcbias/seqgen.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pcbias::cli {

/// --tt HEX --n N, or --anf EXPR [--n N].
struct FunctionSource {
  std::string tt;
  std::string anf;
  std::optional<int> n;
};

enum class MethodSelector { walsh, restriction, oracle, automatic };

struct AnalyzeCommand {
  FunctionSource function;
};
struct BiasCommand {
  FunctionSource function;
  std::string spec;
  MethodSelector method = MethodSelector::automatic;
};
struct BoundCommand {
  FunctionSource function;
  std::string spec;
  std::string approximation_anf;  // optional separable approximation g
};
struct SimulateCommand {
  std::string generator;
  std::string spec;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::random_sequences;
};
struct OracleCommand {
  FunctionSource function;
  std::string spec;
};
struct CrossCheckCommand {
  FunctionSource function;
  std::string spec;
};

using Command =
    std::variant<AnalyzeCommand, BiasCommand, BoundCommand, SimulateCommand, OracleCommand, CrossCheckCommand>;

struct Invocation {
  Command command;
  bool pretty = false;
  std::string out_path;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitParse = 2;

/// Parses and runs one command line (args excludes the program name). The
/// report goes to `out` (or --out FILE), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed command.
int run(const Invocation& invocation, std::ostream& out, std::ostream& err);

}  // namespace pcbias::cli
