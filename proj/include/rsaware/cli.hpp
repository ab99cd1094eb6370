#pragma once

namespace rsaware {

// Full command-line front end; tests drive it in-process. Returns the
// process exit code (check: 0 complete, 2 weak-necessary only, 3 neither;
// elsewhere 0 success, 1 failure).
int run_cli(int argc, const char* const* argv);

}  // namespace rsaware
