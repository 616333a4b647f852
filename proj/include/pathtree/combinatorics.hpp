#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pathtree/path.hpp"
#include "pathtree/types.hpp"

namespace pathtree {

/// Chung-Lu expected-degree sequence with its cached moments.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  /// Throws RangeViolation on negative or non-finite entries.
  explicit DegreeSequence(std::vector<double> degrees);

  [[nodiscard]] std::size_t size() const noexcept { return d_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return d_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return d_; }

  [[nodiscard]] double sum() const noexcept { return s_; }          // S
  [[nodiscard]] double sum_squares() const noexcept { return s2_; } // S2
  [[nodiscard]] double max() const noexcept { return d_max_; }
  [[nodiscard]] double p_max() const noexcept { return s_ > 0 ? d_max_ * d_max_ / s_ : 0.0; }
  [[nodiscard]] double ratio() const noexcept { return s_ > 0 ? s2_ / s_ : 0.0; }  // S2/S

  /// d_max^2 <= S, up to floating-point rounding of the product.
  [[nodiscard]] bool admissible() const noexcept;

  /// Edge probability d_i d_j / S (self-loops use d_i^2 / S), clamped to 1.
  [[nodiscard]] double edge_probability(std::size_t i, std::size_t j) const;

 private:
  std::vector<double> d_;
  double s_ = 0.0;
  double s2_ = 0.0;
  double d_max_ = 0.0;
};

/// Decomposition of a walk into new and repeating edges.
struct EdgeClassification {
  enum class Tag : std::uint8_t { kNew, kRepeating };
  using Block = std::pair<std::size_t, std::size_t>;  // [first edge, last edge]
  using NodePair = std::pair<std::uint64_t, std::uint64_t>;

  std::vector<Tag> tags;                 // one per edge
  std::vector<Block> new_blocks;
  std::vector<Block> repeating_blocks;
  std::vector<std::uint64_t> interior;   // N: nodes whose in- and out-edges are new
  std::vector<NodePair> r1;              // blocks whose first node appeared earlier
  std::vector<NodePair> r2;              // blocks whose first node is a first occurrence
  std::map<std::size_t, std::size_t> q;  // block length -> count

  [[nodiscard]] bool first_and_last_new() const {
    return !tags.empty() && tags.front() == Tag::kNew && tags.back() == Tag::kNew;
  }
};

/// Classifies the edges of a walk given as a node sequence (>= 1 edge).
/// Undirected mode identifies (u,v) with (v,u).
EdgeClassification classify_edges(std::span<const std::uint64_t> nodes, bool directed = false);

inline EdgeClassification classify_edges(const Path& path, bool directed = false) {
  const std::vector<std::uint64_t> nodes(path.nodes.begin(), path.nodes.end());
  return classify_edges(nodes, directed);
}

/// Probability that every edge of the walk exists in a Chung-Lu realization,
/// from the block decomposition. Requires new first and last edges
/// (PreconditionViolated otherwise). Evaluated in log space.
double path_probability(std::span<const std::uint64_t> nodes, const DegreeSequence& seq);

inline double path_probability(const Path& path, const DegreeSequence& seq) {
  const std::vector<std::uint64_t> nodes(path.nodes.begin(), path.nodes.end());
  return path_probability(nodes, seq);
}

struct BoundValue {
  double value = 0.0;
  bool vacuous = false;  // a lower bound <= 0 carries no information
};

/// Lower bound on E[SP_r(s,t)].
BoundValue expected_sp_lower(const DegreeSequence& seq, std::size_t s, std::size_t t, int r);

/// Upper bound on E[NBP_r(s,t)]; requires S2 > S and 2r < S2/S.
double expected_nbp_upper(const DegreeSequence& seq, std::size_t s, std::size_t t, int r);

/// Exact E[SP_r(s,t)] by summing over every distinct-node tuple. Guarded to
/// instances with at most `max_tuples` tuples.
double expected_sp_exact(const DegreeSequence& seq, std::size_t s, std::size_t t, int r,
                         std::uint64_t max_tuples = 10'000'000);

}  // namespace pathtree
