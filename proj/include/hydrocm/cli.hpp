#pragma once

#include <iosfwd>

namespace hydrocm::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kValidationFindings = 1,
    kInputError = 2,
    kIoError = 3,
};

/// Entry point of the `hydrocm` tool: `run`, `report`, `validate-topology`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hydrocm::cli
