#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regula {

// Runs one command. `args` excludes the program name. Exit code 0 is a
// clean answer, 1 a semantic negative (violation, unsafe,
// incompatible), 2 an input problem.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// Same, wired to argv and the standard streams.
int run_cli(int argc, char** argv);

}  // namespace regula
