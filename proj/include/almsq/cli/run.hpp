#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "almsq/cli/records.hpp"

namespace almsq::cli {

/// Records and exit status of one subcommand, before anything is written.
struct Outcome {
  std::vector<ResultRecord> records;
  int exit_code = 0;
  std::string message;  // reported on stderr when exit_code != 0
  std::uint64_t chunk_size = 0;
};

/// Executes `command` against a canonical config. Library errors propagate.
Outcome execute(const std::string& command, const Json& config);

/// Full command line (without the program name). Writes the summary to `out`,
/// diagnostics to `err`, and JSONL/CSV files when --out/--csv are given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace almsq::cli
