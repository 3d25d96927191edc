#pragma once

namespace divlab::tools {

// Parses argv, dispatches to the library, writes the report (JSON) or table
// (CSV) to stdout or --out. Returns 0 when all checks pass, 1 when a check
// fails, 2 on usage errors.
int run(int argc, const char* const* argv);

}  // namespace divlab::tools
