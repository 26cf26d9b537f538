// cli.hpp
// Command-line front end. Kept in the library so tests can drive it without
// spawning processes.

#pragma once

#include <iosfwd>
#include <string>

#include "naqi/qmat.hpp"

namespace naqi {

enum ExitCode : int {
    kExitOk = 0,
    kExitSelftestFailed = 1,
    kExitInputError = 2,
    kExitNotConverged = 3,
};

/// {"dim": d, "re": [[...]], "im": [[...]]}; unknown keys are rejected and the
/// matrix goes through validate_state. Throws InvalidState or
/// std::invalid_argument with a message naming the offending field.
DensityMatrix read_state_json(const std::string& path);
DensityMatrix parse_state_json(const std::string& text);
/// Shortest round-trip representation, so read(write(rho)) is bit-identical.
std::string state_to_json(const ComplexMatrix& m);
void write_state_json(const std::string& path, const ComplexMatrix& m);

/// argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace naqi
