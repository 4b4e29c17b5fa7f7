#ifndef GTV_CLI_HPP
#define GTV_CLI_HPP

#include <string>
#include <vector>

namespace gtv {

/*
  Command-line front end, callable in-process for testing. `args` excludes
  the program name. Exit codes: 0 HOLDS, 1 VIOLATED, 2 UNKNOWN, 64 usage
  error, 65 parse / resolution error, 70 internal error. Malformed input
  never escapes as an exception.
*/
struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args);

// main()-shaped wrapper: runs, prints the captured streams, returns the code.
int run_main(int argc, char** argv);

} // namespace gtv

#endif
