// Command front end shared by the gddp tool and the tests.

#ifndef GDDP_CLI_HPP_
#define GDDP_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gddp/engine.hpp"
#include "gddp/proof.hpp"

namespace gddp {

enum class Command { prove, check, saturate, hints, graph };

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitLimit = 2, kExitUsage = 3 };

struct RunConfig {
  Command command = Command::prove;
  std::string problem_path;
  std::string rules_path;  // empty: the problem's includes, else the bundled gdd.rules
  OutputFormat format = OutputFormat::text;
  Limits limits;
  std::size_t models = 100;
  std::uint64_t seed = 0;
  std::size_t k = 10;
  std::vector<std::string> established;  // hints only
  Exec exec = Exec::serial;
};

// Bundled rules directory: $GDDP_RULES_DIR if set, else the build-time default.
std::string rules_dir();

// Loads a rule file and everything it includes. Includes resolve against
// the including file's directory first, then rules_dir().
RuleSet load_rules(const std::string& path);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gddp

#endif  // GDDP_CLI_HPP_
