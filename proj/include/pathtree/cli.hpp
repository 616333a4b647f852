#pragma once

#include <iosfwd>

namespace pathtree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Entry point of the `pathtree` command. Errors are reported on `err` as a
/// one-line JSON object.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pathtree::cli
