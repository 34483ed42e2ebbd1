#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "riesz/json_io.hpp"

namespace riesz::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kResourceLimit = 3 };

/// A fully resolved job: command, knobs and the contents (not paths) of every input.
struct Job {
  std::string command;
  io::Json options = io::Json::object();
  io::Json inputs = io::Json::object();
};

struct Outcome {
  int exit_code = kPass;
  io::Json report;
};

/// Runs a resolved job. Input and resource errors are thrown as riesz::Error.
Outcome execute(const Job& job, std::ostream& log);

/// Parses "1000000", "10^6" or "1e6" into an integer.
std::int64_t parse_count(const std::string& text);

/// Exit code for an error kind.
int exit_code_for(const std::exception& e);

/// Command-line entry point; writes the report to --out or to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace riesz::cli
