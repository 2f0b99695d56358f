#pragma once

#include <iosfwd>
#include <string_view>

namespace slln {

/// Exit codes besides the verdict codes 0 (holds / converges), 1 (fails /
/// diverges) and 2 (inconclusive).
inline constexpr int kExitUsage = 64;
inline constexpr int kExitUnsupported = 65;
inline constexpr int kExitIo = 66;
inline constexpr int kExitInternal = 70;

/// Expected verdict table used by `corpus` when no --expected file is given.
/// One row per line: spec target p q overall; '#' starts a comment.
std::string_view builtin_corpus_table();

/// Entry point of the `slln` tool. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slln
