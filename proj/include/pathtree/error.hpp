#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pathtree {

enum class ErrorCode {
  kNonPositiveWeight,
  kDuplicateEdge,
  kIdOverflow,
  kDegenerateQuery,
  kPathBudgetExceeded,
  kTreeBudgetExceeded,
  kGuardViolation,
  kPreconditionViolated,
  kInadmissibleSequence,
  kRangeViolation,
  kTargetUnreachable,
  kInfeasibleConfig,
  kEmptyCollection,
  kInsufficientPairs,
  kParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] bool is_budget() const noexcept {
    return code_ == ErrorCode::kPathBudgetExceeded ||
           code_ == ErrorCode::kTreeBudgetExceeded;
  }

 private:
  ErrorCode code_;
};

// Raised when an enumeration outgrows its configured budget. Partial results
// are discarded; the counts describe how far the search got.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(ErrorCode code, std::uint64_t paths, std::uint64_t tree_nodes);

  [[nodiscard]] std::uint64_t paths_found() const noexcept { return paths_; }
  [[nodiscard]] std::uint64_t tree_nodes() const noexcept { return tree_nodes_; }

 private:
  std::uint64_t paths_;
  std::uint64_t tree_nodes_;
};

}  // namespace pathtree
