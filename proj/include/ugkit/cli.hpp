#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ugkit {

// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFails = 1,       // a checked property does not hold
  kExitUsage = 2,       // usage, parse or validation error
  kExitCapability = 3,  // a limit of the toolkit was reached
};

inline constexpr const char* kReportSchema = "ugkit-report/1";

// Runs one command line; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ugkit
