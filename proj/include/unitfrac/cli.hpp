#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace unitfrac::cli {

enum ExitCode : int {
  kOk = 0,        // success / certificate found
  kNotFound = 1,  // scan exhausted, verification failed, regression mismatch
  kUsage = 2,     // bad flags or arguments
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace unitfrac::cli
