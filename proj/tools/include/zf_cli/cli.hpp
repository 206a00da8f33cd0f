#pragma once

#include <iosfwd>

namespace zf::cli {

enum ExitCode : int {
    ok = 0,
    precondition = 2,
    numerical = 3,
    usage = 64,
};

/// Entry point of the `zf` tool. Output goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace zf::cli
