#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace partcat::cli {

/// Exit codes: 0 every check passed, 1 a check failed (witness printed),
/// 2 inconclusive (bound or budget hit), 64 usage error.
enum Exit : int { ok = 0, failed = 1, inconclusive = 2, usage = 64 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace partcat::cli
