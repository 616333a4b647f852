#include "pathtree/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathtree/combinatorics.hpp"
#include "pathtree/error.hpp"
#include "pathtree/experiments.hpp"
#include "pathtree/io.hpp"
#include "pathtree/nonbacktracking.hpp"
#include "pathtree/path_enum.hpp"
#include "pathtree/random_graphs.hpp"

namespace pathtree::cli {

namespace {

using nlohmann::json;

struct PathArgs {
  std::string graph;
  bool directed = false;
  std::string source;
  std::string target;
  std::optional<double> bound;
  std::optional<double> offset;
  std::uint64_t max_paths = 100'000'000;
  std::uint64_t max_tree_nodes = 100'000'000;
  double epsilon = kDefaultEpsilon;
  std::string format = "csv";
  bool with_length = false;
  bool simple_only = false;
};

struct GenArgs {
  std::string seq;
  std::size_t n = 0;
  double avg = 8.0;
  double ratio = 12.0;
  std::size_t hubs = 4;
  double tolerance = 1e-3;
  std::uint64_t max_iters = 20'000'000;
  double min_degree = 1.0;
  std::uint64_t seed = 0;
  std::string output;
};

OutputFormat parse_format(const std::string& f) {
  return f == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
}

std::vector<std::uint64_t> parse_node_list(const std::string& text) {
  std::vector<std::uint64_t> nodes;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      nodes.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad node index '" + token + "' in --path");
    }
  }
  return nodes;
}

// Writes to a file when `path` is set, otherwise to `fallback`.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
  fn(file);
}

std::string join_dir(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void add_path_options(CLI::App* cmd, PathArgs& a) {
  cmd->add_option("--graph", a.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--directed", a.directed, "Treat edges as directed arcs");
  cmd->add_option("--source", a.source, "Source node label")->required();
  cmd->add_option("--target", a.target, "Target node label")->required();
  auto* bound = cmd->add_option("--bound", a.bound, "Length bound D");
  auto* offset = cmd->add_option("--offset", a.offset, "Slack over the shortest distance: D = d(s,t) + offset");
  bound->excludes(offset);
  cmd->add_option("--max-paths", a.max_paths, "Abort after this many paths");
  cmd->add_option("--max-tree-nodes", a.max_tree_nodes, "Abort after this many search-tree nodes");
  cmd->add_option("--epsilon", a.epsilon, "Length comparison tolerance");
  cmd->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--with-length", a.with_length, "Append :length to each path (csv)");
  cmd->add_flag("--simple", a.simple_only, "Keep only simple paths");
}

PathQuery make_query(const LabeledGraph& lg, const PathArgs& a) {
  if (!a.bound && !a.offset) throw Error(ErrorCode::kParseError, "one of --bound or --offset is required");
  PathQuery q;
  q.source = lg.id(a.source);
  q.target = lg.id(a.target);
  q.max_paths = a.max_paths;
  q.max_tree_nodes = a.max_tree_nodes;
  q.epsilon = a.epsilon;
  if (a.bound) {
    q.bound = *a.bound;
  } else {
    const auto dist = shortest_distances(lg.graph, q.source, Direction::kFromSource);
    q.bound = dist[q.target] + *a.offset;
  }
  return q;
}

void report_error(std::ostream& err, std::string_view code, const std::string& message,
                  const json& extra = json::object()) {
  json doc{{"error", code}, {"message", message}};
  doc.update(extra);
  err << doc.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded-length path enumeration and path-count experiments", "pathtree"};
  app.require_subcommand(1);

  PathArgs paths_args;
  auto* paths_cmd = app.add_subcommand("paths", "All walks of length <= D from source to target");
  add_path_options(paths_cmd, paths_args);

  PathArgs nbp_args;
  auto* nbp_cmd = app.add_subcommand("nbp-paths", "All nonbacktracking walks of length <= D");
  add_path_options(nbp_cmd, nbp_args);

  std::string dist_graph, dist_target;
  bool dist_directed = false;
  double dist_epsilon = kDefaultEpsilon;
  auto* dist_cmd = app.add_subcommand("nbp-dist", "Per-arc nonbacktracking distances to a target (CSV)");
  dist_cmd->add_option("--graph", dist_graph)->required()->check(CLI::ExistingFile);
  dist_cmd->add_option("--target", dist_target)->required();
  dist_cmd->add_flag("--directed", dist_directed);
  dist_cmd->add_option("--epsilon", dist_epsilon);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate graphs and degree sequences");
  gen_cmd->require_subcommand(1);
  auto* gen_cl = gen_cmd->add_subcommand("chung-lu", "Chung-Lu realization of a degree sequence");
  gen_cl->add_option("--seq", gen.seq)->required()->check(CLI::ExistingFile);
  gen_cl->add_option("--seed", gen.seed)->required();
  gen_cl->add_option("--output", gen.output, "Output file (default stdout)");
  auto* gen_er = gen_cmd->add_subcommand("er", "Erdos-Renyi G(n, p) with p = avg / (n - 1)");
  gen_er->add_option("--n", gen.n)->required();
  gen_er->add_option("--avg", gen.avg)->required();
  gen_er->add_option("--seed", gen.seed)->required();
  gen_er->add_option("--output", gen.output);
  auto* gen_mcmc = gen_cmd->add_subcommand("mcmc-seq", "Expected-degree sequence with a target S2/S");
  gen_mcmc->add_option("--n", gen.n)->required();
  gen_mcmc->add_option("--avg", gen.avg)->required();
  gen_mcmc->add_option("--ratio", gen.ratio)->required();
  gen_mcmc->add_option("--hubs", gen.hubs);
  gen_mcmc->add_option("--tolerance", gen.tolerance);
  gen_mcmc->add_option("--max-iters", gen.max_iters);
  gen_mcmc->add_option("--min-degree", gen.min_degree);
  gen_mcmc->add_option("--seed", gen.seed)->required();
  gen_mcmc->add_option("--output", gen.output);

  std::string prob_seq, prob_path, prob_format = "csv";
  auto* prob_cmd = app.add_subcommand("prob", "Existence probability of a walk in the Chung-Lu model");
  prob_cmd->add_option("--seq", prob_seq)->required()->check(CLI::ExistingFile);
  prob_cmd->add_option("--path", prob_path, "Comma-separated 0-based node indices")->required();
  prob_cmd->add_option("--format", prob_format)->check(CLI::IsMember({"csv", "json"}));

  std::string bounds_seq;
  std::size_t bounds_s = 0, bounds_t = 0;
  int bounds_r = 1;
  auto* bounds_cmd = app.add_subcommand("bounds", "Expected simple / nonbacktracking path count bounds");
  bounds_cmd->add_option("--seq", bounds_seq)->required()->check(CLI::ExistingFile);
  bounds_cmd->add_option("--s", bounds_s)->required();
  bounds_cmd->add_option("--t", bounds_t)->required();
  bounds_cmd->add_option("--r", bounds_r)->required();

  RatioConfig ratio_cfg;
  std::string ratio_out, ratio_format = "csv";
  auto* ratio_cmd = app.add_subcommand("ratio-exp", "Walks-to-simple-paths ratio study on Chung-Lu graphs");
  ratio_cmd->add_option("--n", ratio_cfg.n);
  ratio_cmd->add_option("--avg", ratio_cfg.avg_degree);
  ratio_cmd->add_option("--ratios", ratio_cfg.ratio_targets, "Target S2/S values")->delimiter(',');
  ratio_cmd->add_option("--sequences", ratio_cfg.sequences_per_target);
  ratio_cmd->add_option("--pairs", ratio_cfg.pairs_per_graph);
  ratio_cmd->add_option("--min-pair-degree", ratio_cfg.min_pair_degree);
  ratio_cmd->add_option("--offset,--offsets", ratio_cfg.offsets)->delimiter(',');
  ratio_cmd->add_option("--hubs", ratio_cfg.hub_count);
  ratio_cmd->add_option("--max-paths", ratio_cfg.max_paths);
  ratio_cmd->add_option("--seed", ratio_cfg.seed)->required();
  ratio_cmd->add_option("--jobs", ratio_cfg.jobs);
  ratio_cmd->add_option("--format", ratio_format)->check(CLI::IsMember({"csv", "json"}));
  ratio_cmd->add_option("--out", ratio_out, "Output directory (default stdout)");

  DeletionConfig del_cfg;
  std::string del_graph, del_out, del_format = "csv";
  bool del_directed = false, del_all_walks = false;
  auto* del_cmd = app.add_subcommand("deletion-exp", "Path survival under random edge deletion");
  del_cmd->add_option("--graph", del_graph)->required()->check(CLI::ExistingFile);
  del_cmd->add_flag("--directed", del_directed);
  del_cmd->add_option("--p-values", del_cfg.p_values)->delimiter(',');
  del_cmd->add_option("--trials", del_cfg.trials_per_p);
  del_cmd->add_option("--pairs", del_cfg.pair_count);
  del_cmd->add_option("--degree-floor", del_cfg.pair_degree_floor);
  del_cmd->add_option("--slack,--offset", del_cfg.slack);
  del_cmd->add_flag("--all-walks", del_all_walks, "Assess all walks instead of simple paths");
  del_cmd->add_option("--max-paths", del_cfg.max_paths);
  del_cmd->add_option("--seed", del_cfg.seed)->required();
  del_cmd->add_option("--jobs", del_cfg.jobs);
  del_cmd->add_option("--format", del_format)->check(CLI::IsMember({"csv", "json"}));
  del_cmd->add_option("--out", del_out, "Output directory (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kExitValidation;
  }

  try {
    if (paths_cmd->parsed() || nbp_cmd->parsed()) {
      const bool nbp = nbp_cmd->parsed();
      const PathArgs& a = nbp ? nbp_args : paths_args;
      const LabeledGraph lg = read_edge_list_file(a.graph, a.directed);
      const PathQuery q = make_query(lg, a);
      std::ostringstream buffer;
      if (!nbp && !a.simple_only) {
        write_paths(buffer, grow_path_tree(lg.graph, q), lg, parse_format(a.format), a.with_length);
      } else {
        auto found = nbp ? nbp_pathfind(lg.graph, q) : pathfind(lg.graph, q);
        if (a.simple_only) found = filter_simple(found);
        write_paths(buffer, found, lg, parse_format(a.format), a.with_length);
      }
      out << buffer.str();
    } else if (dist_cmd->parsed()) {
      const LabeledGraph lg = read_edge_list_file(dist_graph, dist_directed);
      const auto tree = build_shortest_path_tree(lg.graph, lg.id(dist_target), dist_epsilon);
      write_nbp_csv(out, nbp_distances(lg.graph, tree), lg);
    } else if (gen_cl->parsed()) {
      const DegreeSequence seq = read_degree_sequence_file(gen.seq);
      const Graph g = sample_chung_lu(seq, RngSeed{gen.seed, 0});
      emit(gen.output, out, [&](std::ostream& o) { write_edge_list(o, g); });
    } else if (gen_er->parsed()) {
      const Graph g = sample_erdos_renyi(gen.n, gen.avg, RngSeed{gen.seed, 0});
      emit(gen.output, out, [&](std::ostream& o) { write_edge_list(o, g); });
    } else if (gen_mcmc->parsed()) {
      McmcConfig cfg;
      cfg.n = gen.n;
      cfg.target_avg = gen.avg;
      cfg.target_ratio = gen.ratio;
      cfg.hub_count = gen.hubs;
      cfg.tolerance = gen.tolerance;
      cfg.max_iters = gen.max_iters;
      cfg.min_degree = gen.min_degree;
      const DegreeSequence seq = mcmc_degree_sequence(cfg, RngSeed{gen.seed, 0});
      emit(gen.output, out, [&](std::ostream& o) { write_degree_sequence(o, seq); });
    } else if (prob_cmd->parsed()) {
      const DegreeSequence seq = read_degree_sequence_file(prob_seq);
      const auto nodes = parse_node_list(prob_path);
      const double p = path_probability(nodes, seq);
      if (prob_format == "json") {
        std::ostringstream classification;
        write_classification_json(classification, classify_edges(nodes));
        json doc{{"probability", p}, {"classification", json::parse(classification.str())}};
        out << doc.dump() << '\n';
      } else {
        out << format_number(p) << '\n';
      }
    } else if (bounds_cmd->parsed()) {
      const DegreeSequence seq = read_degree_sequence_file(bounds_seq);
      const BoundValue lower = expected_sp_lower(seq, bounds_s, bounds_t, bounds_r);
      std::ostringstream buffer;
      buffer << "sp_lower " << format_number(lower.value) << (lower.vacuous ? " vacuous" : "") << '\n';
      try {
        buffer << "nbp_upper " << format_number(expected_nbp_upper(seq, bounds_s, bounds_t, bounds_r)) << '\n';
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPreconditionViolated) throw;
        buffer << "nbp_upper unavailable (" << e.what() << ")\n";
      }
      out << buffer.str();
    } else if (ratio_cmd->parsed()) {
      const RatioReport report = ratio_experiment(ratio_cfg);
      if (!ratio_out.empty()) std::filesystem::create_directories(ratio_out);
      if (ratio_format == "json") {
        emit(ratio_out.empty() ? "" : join_dir(ratio_out, "ratio.json"), out,
             [&](std::ostream& o) { write_ratio_json(o, report); });
      } else {
        emit(ratio_out.empty() ? "" : join_dir(ratio_out, "ratio.csv"), out,
             [&](std::ostream& o) { write_ratio_csv(o, report); });
        if (!ratio_out.empty()) {
          emit(join_dir(ratio_out, "ratio_stats.csv"), out,
               [&](std::ostream& o) { write_ratio_stats_csv(o, report); });
        }
      }
    } else if (del_cmd->parsed()) {
      del_cfg.simple_only = !del_all_walks;
      const LabeledGraph lg = read_edge_list_file(del_graph, del_directed);
      const DeletionReport report = edge_deletion_experiment(lg.graph, del_cfg);
      if (!del_out.empty()) std::filesystem::create_directories(del_out);
      if (del_format == "json") {
        emit(del_out.empty() ? "" : join_dir(del_out, "deletion.json"), out,
             [&](std::ostream& o) { write_deletion_json(o, report, del_cfg.p_values, lg); });
      } else {
        emit(del_out.empty() ? "" : join_dir(del_out, "deletion.csv"), out,
             [&](std::ostream& o) { write_deletion_csv(o, report, lg); });
        if (!del_out.empty()) {
          emit(join_dir(del_out, "deletion_stats.csv"), out,
               [&](std::ostream& o) { write_deletion_stats_csv(o, report, del_cfg.p_values); });
          emit(join_dir(del_out, "deletion_curves.csv"), out,
               [&](std::ostream& o) { write_deletion_curves_csv(o, report, del_cfg.p_values); });
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    report_error(err, to_string(e.code()), e.what(),
                 {{"paths", e.paths_found()}, {"tree_nodes", e.tree_nodes()}});
    return kExitBudget;
  } catch (const Error& e) {
    report_error(err, to_string(e.code()), e.what());
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace pathtree::cli
