#pragma once

#include <string>
#include <vector>

namespace cnls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

/// Entry point of the cnls tool. Returns the process exit code: 0 on
/// success, 2 when a --check assertion fails, 1 on usage or runtime errors
/// (with a JSON error object on stderr).
int run(int argc, const char* const* argv);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace cnls::cli
