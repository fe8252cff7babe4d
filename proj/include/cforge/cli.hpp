#pragma once

// Command-line front end. One invocation runs one subcommand, prints a
// single JSON document to out, and keeps human-readable summaries on err.
// Exit code 0 means the verdict holds (or the computation finished), 1
// means a verifier found a failing verdict (witnesses included in the
// JSON), 2 means the invocation itself failed (bad spec, caps, I/O).

#include <ostream>
#include <string>
#include <vector>

namespace cforge {

// args excludes the program name. Never throws: every error is mapped to
// exit code 2 with a diagnostic line on err.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace cforge
