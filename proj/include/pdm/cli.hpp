#pragma once

// Front end behind the `pdml` executable.
//
//   pdml classify|verify|table|surface [options]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration or
// usage, 3 I/O failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace pdm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdm::cli
