// Command-line front end.  Kept in the library so tests can drive it
// in-process.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lzeros::cli {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kGap = 2;
constexpr int kUsage = 64;

/// Environment variable naming the default cache directory.
constexpr const char* kCacheEnv = "LZEROS_CACHE_DIR";

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lzeros::cli
