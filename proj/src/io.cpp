#include "pathtree/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pathtree/error.hpp"

namespace pathtree {

using nlohmann::json;

NodeId LabeledGraph::id(const std::string& label) const {
  const auto it = index.find(label);
  if (it == index.end()) throw Error(ErrorCode::kRangeViolation, "unknown node label '" + label + "'");
  return it->second;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  return in;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

double parse_double(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line_no) + ": not a number '" + token + "'");
}

}  // namespace

LabeledGraph read_edge_list(std::istream& in, bool directed) {
  LabeledGraph lg;
  std::vector<EdgeRecord> records;
  auto intern = [&](const std::string& label) -> std::uint64_t {
    const auto [it, inserted] = lg.index.emplace(label, static_cast<NodeId>(lg.labels.size()));
    if (inserted) lg.labels.push_back(label);
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::string u, v, w, extra;
    if (!(fields >> u)) continue;
    if (!(fields >> v)) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected 'u v [weight]'");
    }
    EdgeRecord r;
    r.u = intern(u);
    r.v = intern(v);
    if (fields >> w) r.weight = parse_double(w, line_no);
    if (fields >> extra) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": trailing fields");
    }
    records.push_back(r);
  }
  lg.graph = Graph::build(records, directed, lg.labels.size());
  return lg;
}

LabeledGraph read_edge_list_file(const std::string& path, bool directed) {
  auto in = open_input(path);
  return read_edge_list(in, directed);
}

LabeledGraph with_numeric_labels(Graph graph) {
  LabeledGraph lg;
  lg.graph = std::move(graph);
  for (NodeId v = 0; v < lg.graph.node_count(); ++v) {
    lg.labels.push_back(std::to_string(v));
    lg.index.emplace(lg.labels.back(), v);
  }
  return lg;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  for (const EdgeRecord& e : graph.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_number(e.weight) << '\n';
  }
}

DegreeSequence read_degree_sequence(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<double> values;
  if (first != std::string::npos && text[first] == '[') {
    try {
      values = json::parse(text).get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, std::string("degree sequence JSON: ") + e.what());
    }
  } else {
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      std::istringstream fields(strip_comment(line));
      std::string token;
      while (fields >> token) values.push_back(parse_double(token, line_no));
    }
  }
  return DegreeSequence(std::move(values));
}

DegreeSequence read_degree_sequence_file(const std::string& path) {
  auto in = open_input(path);
  return read_degree_sequence(in);
}

void write_degree_sequence(std::ostream& out, const DegreeSequence& seq) {
  for (const double d : seq.values()) out << format_number(d) << '\n';
}

namespace {

class PathWriter {
 public:
  PathWriter(std::ostream& out, const LabeledGraph& graph, OutputFormat format, bool with_length)
      : out_(out), graph_(graph), format_(format), with_length_(with_length) {
    if (format_ == OutputFormat::kJson) out_ << '[';
  }
  ~PathWriter() {
    if (format_ == OutputFormat::kJson) out_ << (first_ ? "]\n" : "\n]\n");
  }

  void operator()(std::span<const NodeId> nodes, Length length) {
    if (format_ == OutputFormat::kCsv) {
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out_ << ',';
        out_ << graph_.label(nodes[i]);
      }
      if (with_length_) out_ << ':' << format_number(length);
      out_ << '\n';
      return;
    }
    json labels = json::array();
    for (const NodeId v : nodes) labels.push_back(graph_.label(v));
    json item{{"nodes", labels}, {"length", length}};
    out_ << (first_ ? "\n" : ",\n") << item.dump();
    first_ = false;
  }

 private:
  std::ostream& out_;
  const LabeledGraph& graph_;
  OutputFormat format_;
  bool with_length_;
  bool first_ = true;
};

}  // namespace

void write_paths(std::ostream& out, const PathTree& tree, const LabeledGraph& graph,
                 OutputFormat format, bool with_length) {
  PathWriter writer(out, graph, format, with_length);
  tree.for_each_path(writer);
}

void write_paths(std::ostream& out, std::span<const Path> paths, const LabeledGraph& graph,
                 OutputFormat format, bool with_length) {
  PathWriter writer(out, graph, format, with_length);
  for (const Path& p : paths) writer(p.nodes, p.length);
}

void write_nbp_csv(std::ostream& out, const NbpDistanceMap& nbp, const LabeledGraph& graph) {
  out << "a,b,value\n";
  const Graph& g = graph.graph;
  for (NodeId a = 0; a < g.node_count(); ++a) {
    const auto arcs = g.out(a);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      out << graph.label(a) << ',' << graph.label(arcs[k].node) << ','
          << format_number(nbp.at_arc(g.out_begin(a) + k)) << '\n';
    }
  }
}

void write_classification_json(std::ostream& out, const EdgeClassification& c) {
  json tags = json::array();
  for (const auto t : c.tags) tags.push_back(t == EdgeClassification::Tag::kNew ? "new" : "repeating");
  json q = json::object();
  for (const auto& [len, count] : c.q) q[std::to_string(len)] = count;
  json doc{{"tags", tags}, {"N", c.interior}, {"R1", c.r1}, {"R2", c.r2}, {"q", q}};
  out << doc.dump() << '\n';
}

namespace {

json stats_json(const SummaryStats& s) {
  return {{"min", s.min}, {"q1", s.q1}, {"median", s.median}, {"q3", s.q3},
          {"max", s.max}, {"mean", s.mean}, {"count", s.count}};
}

void write_stats_fields(std::ostream& out, const SummaryStats& s) {
  out << format_number(s.min) << ',' << format_number(s.q1) << ',' << format_number(s.median)
      << ',' << format_number(s.q3) << ',' << format_number(s.max) << ','
      << format_number(s.mean);
}

}  // namespace

void write_ratio_csv(std::ostream& out, const RatioReport& report) {
  out << "ratio_target,offset,sequence_id,pair_id,n_walks,n_simple,ratio\n";
  for (const auto& s : report.samples) {
    out << format_number(s.ratio_target) << ',' << s.offset << ',' << s.sequence_id << ','
        << s.pair_id << ',' << s.n_walks << ',' << s.n_simple << ','
        << (s.status == "ok" ? format_number(s.ratio) : s.status) << '\n';
  }
}

void write_ratio_stats_csv(std::ostream& out, const RatioReport& report) {
  out << "ratio_target,offset,min,q1,median,q3,max,mean,count,skipped\n";
  auto row = [&](const RatioGroup& g, const std::string& target) {
    out << target << ',' << g.offset << ',';
    write_stats_fields(out, g.stats);
    out << ',' << g.stats.count << ',' << g.skipped << '\n';
  };
  for (const auto& g : report.groups) row(g, format_number(g.ratio_target));
  for (const auto& g : report.by_offset) row(g, "all");
}

void write_ratio_json(std::ostream& out, const RatioReport& report) {
  json samples = json::array();
  for (const auto& s : report.samples) {
    json row{{"ratio_target", s.ratio_target}, {"offset", s.offset},
             {"sequence_id", s.sequence_id},   {"pair_id", s.pair_id},
             {"source", s.source},             {"target", s.target},
             {"n_walks", s.n_walks},           {"n_simple", s.n_simple},
             {"status", s.status}};
    row["ratio"] = s.status == "ok" ? json(s.ratio) : json(nullptr);
    samples.push_back(row);
  }
  json groups = json::array();
  for (const auto& g : report.groups) {
    groups.push_back({{"ratio_target", g.ratio_target}, {"offset", g.offset},
                      {"stats", stats_json(g.stats)}, {"skipped", g.skipped}});
  }
  json pooled = json::array();
  for (const auto& g : report.by_offset) {
    pooled.push_back({{"offset", g.offset}, {"stats", stats_json(g.stats)}, {"skipped", g.skipped}});
  }
  json doc{{"schema_version", kReportSchemaVersion},
           {"achieved_ratios", report.achieved_ratios},
           {"samples", samples},
           {"groups", groups},
           {"by_offset", pooled}};
  out << doc.dump(2) << '\n';
}

void write_deletion_csv(std::ostream& out, const DeletionReport& report, const LabeledGraph&) {
  out << "p,pair_id,trial,fraction\n";
  for (const auto& s : report.samples) {
    out << format_number(s.p) << ',' << s.pair_id << ',' << s.trial << ','
        << format_number(s.fraction) << '\n';
  }
}

void write_deletion_stats_csv(std::ostream& out, const DeletionReport& report,
                              std::span<const double> p_values) {
  out << "p,min,q1,median,q3,max,mean\n";
  for (std::size_t k = 0; k < report.stats.size(); ++k) {
    out << format_number(p_values[k]) << ',';
    write_stats_fields(out, report.stats[k]);
    out << '\n';
  }
}

void write_deletion_curves_csv(std::ostream& out, const DeletionReport& report,
                               std::span<const double> p_values) {
  out << "pair_id,p,median_fraction\n";
  for (std::size_t i = 0; i < report.curves.size(); ++i) {
    for (std::size_t k = 0; k < report.curves[i].size(); ++k) {
      out << i << ',' << format_number(p_values[k]) << ',' << format_number(report.curves[i][k]) << '\n';
    }
  }
}

void write_deletion_json(std::ostream& out, const DeletionReport& report,
                         std::span<const double> p_values, const LabeledGraph& graph) {
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"source", graph.label(p.source)}, {"target", graph.label(p.target)},
                     {"distance", p.distance}, {"collection_size", p.collection_size}});
  }
  json samples = json::array();
  for (const auto& s : report.samples) {
    samples.push_back({{"p", s.p}, {"pair_id", s.pair_id}, {"trial", s.trial}, {"fraction", s.fraction}});
  }
  json stats = json::array();
  for (std::size_t k = 0; k < report.stats.size(); ++k) {
    json row = stats_json(report.stats[k]);
    row["p"] = p_values[k];
    stats.push_back(row);
  }
  json doc{{"schema_version", kReportSchemaVersion},
           {"pairs", pairs},
           {"samples", samples},
           {"stats", stats},
           {"curves", report.curves},
           {"rejected_pairs", report.rejected_pairs}};
  out << doc.dump(2) << '\n';
}

}  // namespace pathtree
