#pragma once

#include <string>
#include <vector>

namespace aev::detail {

struct ProcessResult {
    std::string out;
    bool timed_out = false;
    /// Exit code, or -signal when killed by a signal.
    int status = 0;
};

/// Runs argv[0] (searched on PATH) with `input` on stdin and collects stdout; stderr is discarded.
/// The child is killed and reaped when the deadline passes. Throws SolverSpawnError.
ProcessResult run_process(const std::vector<std::string> & argv, const std::string & input, long timeout_ms);

} // namespace aev::detail
