#pragma once

#include <ostream>

namespace ivlingam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitConfigError = 3;

/// Entry point of the ivlingam command. Returns the process exit code; a
/// Reject verdict is still a successful run.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ivlingam::cli
