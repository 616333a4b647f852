#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathtree/combinatorics.hpp"
#include "pathtree/experiments.hpp"
#include "pathtree/graph.hpp"
#include "pathtree/nonbacktracking.hpp"
#include "pathtree/path_enum.hpp"

namespace pathtree {

inline constexpr int kReportSchemaVersion = 1;

/// Graph plus the external labels of its nodes (e.g. AS numbers).
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[id]
  std::unordered_map<std::string, NodeId> index;

  /// Throws RangeViolation for unknown labels.
  [[nodiscard]] NodeId id(const std::string& label) const;
  [[nodiscard]] const std::string& label(NodeId v) const { return labels[v]; }
};

/// Parses `u v [weight]` records; `#` starts a comment, weight defaults to 1.
/// Labels get dense ids in order of first appearance.
LabeledGraph read_edge_list(std::istream& in, bool directed);
LabeledGraph read_edge_list_file(const std::string& path, bool directed);

/// Labels are the decimal node ids.
LabeledGraph with_numeric_labels(Graph graph);

void write_edge_list(std::ostream& out, const Graph& graph);

/// One value per line (comments allowed) or a JSON array.
DegreeSequence read_degree_sequence(std::istream& in);
DegreeSequence read_degree_sequence_file(const std::string& path);
void write_degree_sequence(std::ostream& out, const DegreeSequence& seq);

/// Shortest round-trip decimal form; "inf" for infinity.
std::string format_number(double value);

enum class OutputFormat { kCsv, kJson };

/// One path per line as comma-separated labels with an optional `:length`
/// suffix, or a JSON array of {nodes, length}.
void write_paths(std::ostream& out, const PathTree& tree, const LabeledGraph& graph,
                 OutputFormat format, bool with_length);
void write_paths(std::ostream& out, std::span<const Path> paths, const LabeledGraph& graph,
                 OutputFormat format, bool with_length);

/// `a,b,value` per arc.
void write_nbp_csv(std::ostream& out, const NbpDistanceMap& nbp, const LabeledGraph& graph);

void write_classification_json(std::ostream& out, const EdgeClassification& c);

void write_ratio_csv(std::ostream& out, const RatioReport& report);
void write_ratio_stats_csv(std::ostream& out, const RatioReport& report);
void write_ratio_json(std::ostream& out, const RatioReport& report);

void write_deletion_csv(std::ostream& out, const DeletionReport& report,
                        const LabeledGraph& graph);
void write_deletion_stats_csv(std::ostream& out, const DeletionReport& report,
                              std::span<const double> p_values);
void write_deletion_curves_csv(std::ostream& out, const DeletionReport& report,
                               std::span<const double> p_values);
void write_deletion_json(std::ostream& out, const DeletionReport& report,
                         std::span<const double> p_values, const LabeledGraph& graph);

}  // namespace pathtree
