// Command-line front end: argument parsing and command dispatch.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dawn/graph.hpp"

namespace dawn::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kUsageError = 2,
  kNegativeCycle = 3,
};

enum class Command { Sssp, Mssp, Apsp, Mu, Bench, Convert };

std::string to_string(Command c);

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceSpec {
  enum class Kind { None, List, Count, All };
  Kind kind = Kind::None;
  std::vector<NodeId> list;
  std::size_t count = 0;
};

struct RunConfig {
  Command command = Command::Sssp;
  std::string input;
  std::string input_format;  // "edgelist" or "mtx"
  bool directed = true;
  std::string algorithm = "govm";
  SourceSpec sources;
  std::string weights = "keep";
  std::size_t workers = 1;
  std::string output;         // empty: stdout
  std::string output_format;  // rows | csv | json; convert: edgelist | mtx
  std::uint64_t seed = 0;
  std::size_t floyd_cap = 2000;
  bool allow_negative_cycles = false;
  std::size_t repeats = 3;
  std::string task;  // bench only; empty: inferred from the source spec
};

// Environment variables consulted when the matching flag is absent.
inline constexpr const char* kWorkersEnv = "DAWN_WORKERS";
inline constexpr const char* kSeedEnv = "DAWN_SEED";

// Throws UsageError naming the offending flag. Returns std::nullopt when
// --help was requested (help text already written to `out`).
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run with exit-code mapping. args excludes the program name.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dawn::cli
