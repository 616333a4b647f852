#include "pathtree/error.hpp"

namespace pathtree {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kIdOverflow: return "IdOverflow";
    case ErrorCode::kDegenerateQuery: return "DegenerateQuery";
    case ErrorCode::kPathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorCode::kTreeBudgetExceeded: return "TreeBudgetExceeded";
    case ErrorCode::kGuardViolation: return "GuardViolation";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kInadmissibleSequence: return "InadmissibleSequence";
    case ErrorCode::kRangeViolation: return "RangeViolation";
    case ErrorCode::kTargetUnreachable: return "TargetUnreachable";
    case ErrorCode::kInfeasibleConfig: return "InfeasibleConfig";
    case ErrorCode::kEmptyCollection: return "EmptyCollection";
    case ErrorCode::kInsufficientPairs: return "InsufficientPairs";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

BudgetExceeded::BudgetExceeded(ErrorCode code, std::uint64_t paths,
                               std::uint64_t tree_nodes)
    : Error(code, std::string(to_string(code)) + " after " +
                      std::to_string(paths) + " paths and " +
                      std::to_string(tree_nodes) + " tree nodes"),
      paths_(paths),
      tree_nodes_(tree_nodes) {}

}  // namespace pathtree
