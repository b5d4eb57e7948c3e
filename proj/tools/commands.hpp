#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "diagalg/homcompute.hpp"
#include "diagalg/serialize.hpp"

namespace diagalg::cli {

enum class Format { Json, Csv, Pretty };

struct RunConfig {
  std::string command;
  std::string theorem;  // for command == "theorem"
  int n = 2;
  std::string family = "P";
  std::optional<int> r;
  std::string ring = "Z";
  std::vector<std::string> deltas{"0"};
  std::optional<int> Q;
  std::optional<int> height;
  bool cohomology = false;
  Index guard = kDefaultBarGuard;
  Format format = Format::Json;
  std::string out;
  std::vector<std::string> diagrams;  // compose operands
};

struct CommandResult {
  int exit_code = 0;
  Json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string pretty;
};

// Runs one command; library errors propagate as exceptions.
CommandResult run_command(const RunConfig& config);

std::string render(const CommandResult& result, Format format);

// Full entry point: argument parsing, dispatch, error mapping and output.
// Exit codes: 0 success or match, 1 mismatch or refuted check, 2 usage or
// parse error, 3 resource guard.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diagalg::cli
