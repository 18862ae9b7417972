#ifndef SCILLA_CLI_HPP
#define SCILLA_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace scilla::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolated = 1,
  kExitParseError = 2,
  kExitCheckError = 3,
  kExitSchemaError = 4,
  kExitInconclusive = 5,
  kExitUnknownPredicate = 6,
  kExitBudgetExhausted = 7,
  kExitIoError = 10,
};

enum class Format { Text, Json };

/// Seed used when neither --seed nor SCILLA_MC_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20180101;

std::uint64_t default_seed();

struct CheckOptions {
  std::string contract;
  Format format = Format::Text;
};

struct SimulateOptions {
  std::string contract;
  std::string params;  // empty: <stem>.params.json next to the contract, if present
  std::string schedule;
  std::string out;     // empty: stdout
  std::string start;   // optional CState JSON to start from instead of state0
  std::string id = "C";
  std::string balance = "0";
};

struct VerifyOptions {
  std::string contract;
  std::string params;
  std::string prop;
  std::string expr;
  std::string alphabet;  // empty: the canonical 54-element alphabet
  std::size_t depth = 4;
  bool inductive = false;
  std::uint64_t samples = 500;
  std::optional<std::uint64_t> seed;
  std::string backer = "A1";
  std::string amount = "5";
  std::size_t reach_depth = 3;
  std::size_t cont_depth = 3;
  std::string guard;  // element predicate replacing no_claims_from(backer)
  std::string out;
  int jobs = 0;
  std::string id = "C";
  std::string balance = "0";
  Format format = Format::Text;
};

struct NetworkOptions {
  std::string config;
  std::optional<std::size_t> budget;
  std::string out;
};

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_network(const NetworkOptions& o, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches to one of the commands above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scilla::cli

#endif  // SCILLA_CLI_HPP
