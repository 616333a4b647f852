#pragma once

#include <cstdint>
#include <limits>

namespace pathtree {

/// Dense node identifier in [0, n).
using NodeId = std::uint32_t;
/// Accumulated path length (sum of positive arc weights).
using Length = double;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr Length kInfinity = std::numeric_limits<Length>::infinity();

/// Absolute tolerance for comparing accumulated lengths.
inline constexpr Length kDefaultEpsilon = 1e-9;

}  // namespace pathtree
