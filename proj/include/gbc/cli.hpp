#ifndef GBC_CLI_HPP
#define GBC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gbc::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kIoError = 2,
    kValidationError = 3,
};

/// Runs the command line tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace gbc::cli

#endif  // GBC_CLI_HPP
