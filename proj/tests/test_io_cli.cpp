#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "pathtree/cli.hpp"
#include "pathtree/error.hpp"
#include "pathtree/io.hpp"
#include "pathtree/path_enum.hpp"

using namespace pathtree;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pathtree");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pathtree_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kReferenceGraph =
    "# reference graph\n"
    "s c\ns d\ns e\nc d\nc e\na c\nb c\na t\nb t\nc t\n";

}  // namespace

TEST_CASE("read_edge_list: labels, comments, weights") {
  std::istringstream in("# header\nAS7 AS3 2.5\n\nAS3 AS9  # trailing comment\n");
  const auto lg = read_edge_list(in, false);
  CHECK(lg.graph.node_count() == 3);
  CHECK(lg.labels == std::vector<std::string>{"AS7", "AS3", "AS9"});
  CHECK(lg.id("AS9") == 2);
  CHECK(lg.graph.weight(0, 1) == 2.5);
  CHECK(lg.graph.weight(2, 1) == 1.0);
  CHECK_THROWS_AS((void)lg.id("AS1"), Error);
}

TEST_CASE("read_edge_list: errors name the line") {
  auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      (void)read_edge_list(in, false);
    } catch (const Error& e) {
      return std::make_pair(e.code(), std::string(e.what()));
    }
    return std::make_pair(ErrorCode::kParseError, std::string("no error"));
  };
  auto [c1, m1] = code_of("a b\nc\n");
  CHECK(c1 == ErrorCode::kParseError);
  CHECK(m1.find("line 2") != std::string::npos);
  CHECK(code_of("a b x\n").first == ErrorCode::kParseError);
  CHECK(code_of("a b 1 2\n").first == ErrorCode::kParseError);
  CHECK(code_of("a b 0\n").first == ErrorCode::kNonPositiveWeight);
  CHECK(code_of("a b\nb a\n").first == ErrorCode::kDuplicateEdge);
}

TEST_CASE("edge list round trip") {
  const Graph g = Graph::build(std::vector<EdgeRecord>{{0, 1, 1.5}, {1, 2, 1.0}, {2, 2, 3.0}}, false);
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  const auto back = read_edge_list(in, false);
  CHECK(back.graph.edge_count() == 3);
  CHECK(back.graph.weight(back.id("0"), back.id("1")) == 1.5);
  CHECK(back.graph.weight(back.id("2"), back.id("2")) == 3.0);
}

TEST_CASE("degree sequences: text and JSON") {
  std::istringstream text("# d\n1\n2.5\n\n3\n");
  CHECK(read_degree_sequence(text).sum() == 6.5);
  std::istringstream json("[1, 2, 3.5]");
  CHECK(read_degree_sequence(json).sum() == 6.5);
  std::istringstream bad("1\nx\n");
  CHECK_THROWS_AS(read_degree_sequence(bad), Error);
  std::istringstream neg("1\n-2\n");
  CHECK_THROWS_AS(read_degree_sequence(neg), Error);

  std::ostringstream out;
  write_degree_sequence(out, DegreeSequence({1, 0.5, 80}));
  std::istringstream again(out.str());
  CHECK(read_degree_sequence(again).sum() == 81.5);
}

TEST_CASE("format_number") {
  CHECK(format_number(3.0) == "3");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(kInfinity) == "inf");
}

TEST_CASE("write_paths: csv and json use labels") {
  std::istringstream in(kReferenceGraph);
  const auto lg = read_edge_list(in, false);
  PathQuery q;
  q.source = lg.id("s");
  q.target = lg.id("t");
  q.bound = 2;
  const auto paths = pathfind(lg.graph, q);
  std::ostringstream csv, json;
  write_paths(csv, paths, lg, OutputFormat::kCsv, true);
  write_paths(json, paths, lg, OutputFormat::kJson, false);
  CHECK(csv.str() == "s,c,t:2\n");
  CHECK(json.str().find("\"nodes\"") != std::string::npos);
  CHECK(json.str().find("\"t\"") != std::string::npos);
}

TEST_CASE("cli: paths on the reference graph") {
  TempDir dir;
  const auto graph = dir.path / "ref.txt";
  spit(graph, kReferenceGraph);
  const auto r = run({"paths", "--graph", graph.string(), "--source", "s", "--target", "t", "--bound", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(line_count(r.out) == 5);
  CHECK(r.out.find("s,e,c,t\n") != std::string::npos);
  CHECK(r.err.empty());

  const auto offset = run({"paths", "--graph", graph.string(), "--source", "s", "--target", "t", "--offset", "1"});
  CHECK(offset.out == r.out);

  const auto nbp = run({"nbp-paths", "--graph", graph.string(), "--source", "s", "--target", "t", "--bound", "3"});
  CHECK(line_count(nbp.out) == 5);

  const auto simple = run({"paths", "--graph", graph.string(), "--source", "s", "--target", "t",
                           "--bound", "4", "--simple"});
  const auto all = run({"paths", "--graph", graph.string(), "--source", "s", "--target", "t", "--bound", "4"});
  CHECK(line_count(simple.out) < line_count(all.out));

  const auto dist = run({"nbp-dist", "--graph", graph.string(), "--target", "t"});
  CHECK(dist.code == 0);
  CHECK(dist.out.rfind("a,b,value\n", 0) == 0);
  CHECK(line_count(dist.out) == 21);
  CHECK(dist.out.find("\nc,s,4\n") != std::string::npos);

  // Inputs are never modified.
  CHECK(slurp(graph) == kReferenceGraph);
}

TEST_CASE("cli: validation and budget exit codes") {
  TempDir dir;
  const auto graph = dir.path / "ref.txt";
  spit(graph, kReferenceGraph);
  const auto missing = run({"paths", "--graph", graph.string(), "--source", "s", "--bound", "3"});
  CHECK(missing.code == cli::kExitValidation);
  CHECK(missing.out.empty());
  CHECK(missing.err.find("\"error\"") != std::string::npos);

  const auto both = run({"paths", "--graph", graph.string(), "--source", "s", "--target", "t",
                         "--bound", "3", "--offset", "1"});
  CHECK(both.code == cli::kExitValidation);

  const auto same = run({"paths", "--graph", graph.string(), "--source", "s", "--target", "s", "--bound", "3"});
  CHECK(same.code == cli::kExitValidation);
  CHECK(same.err.find("DegenerateQuery") != std::string::npos);

  const auto unknown = run({"paths", "--graph", graph.string(), "--source", "zz", "--target", "t", "--bound", "3"});
  CHECK(unknown.code == cli::kExitValidation);

  const auto budget = run({"paths", "--graph", graph.string(), "--source", "s", "--target", "t",
                           "--bound", "9", "--max-paths", "3"});
  CHECK(budget.code == cli::kExitBudget);
  CHECK(budget.out.empty());
  CHECK(budget.err.find("PathBudgetExceeded") != std::string::npos);

  CHECK(run({"gen", "er", "--n", "10", "--avg", "2"}).code == cli::kExitValidation);  // no --seed
  CHECK(run({"no-such-command"}).code == cli::kExitValidation);
}

TEST_CASE("cli: bounds and prob") {
  TempDir dir;
  const auto seq = dir.path / "uniform800.txt";
  std::string text;
  for (int i = 0; i < 800; ++i) text += "8\n";
  spit(seq, text);
  const auto r = run({"bounds", "--seq", seq.string(), "--s", "0", "--t", "1", "--r", "3"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string name;
  double lower = 0, upper = 0;
  lines >> name >> lower;
  CHECK(name == "sp_lower");
  lines >> name >> upper;
  CHECK(name == "nbp_upper");
  CHECK(lower == doctest::Approx(0.63520).epsilon(1e-9));
  CHECK(upper == doctest::Approx(0.74807).epsilon(1e-4));

  const auto r5 = run({"bounds", "--seq", seq.string(), "--s", "0", "--t", "1", "--r", "5"});
  CHECK(r5.code == 0);
  CHECK(r5.out.find("nbp_upper unavailable") != std::string::npos);

  const auto p = run({"prob", "--seq", seq.string(), "--path", "0,1,2"});
  CHECK(p.code == 0);
  CHECK(std::stod(p.out) == doctest::Approx(1e-4));
  CHECK(run({"prob", "--seq", seq.string(), "--path", "0,1,0"}).code == cli::kExitValidation);
}

TEST_CASE("cli: generators are byte-reproducible") {
  TempDir dir;
  const auto a = run({"gen", "er", "--n", "200", "--avg", "4", "--seed", "7"});
  const auto b = run({"gen", "er", "--n", "200", "--avg", "4", "--seed", "7"});
  const auto c = run({"gen", "er", "--n", "200", "--avg", "4", "--seed", "8"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);

  const auto seq = run({"gen", "mcmc-seq", "--n", "100", "--avg", "6", "--ratio", "9", "--hubs", "1", "--seed", "3"});
  CHECK(seq.code == 0);
  const auto seq_file = dir.path / "seq.txt";
  spit(seq_file, seq.out);
  const auto cl1 = run({"gen", "chung-lu", "--seq", seq_file.string(), "--seed", "5"});
  const auto cl2 = run({"gen", "chung-lu", "--seq", seq_file.string(), "--seed", "5"});
  CHECK(cl1.code == 0);
  CHECK(cl1.out == cl2.out);
  CHECK(!cl1.out.empty());
}

TEST_CASE("cli: experiments write identical files on rerun") {
  TempDir dir;
  const auto graph = dir.path / "er.txt";
  spit(graph, run({"gen", "er", "--n", "150", "--avg", "6", "--seed", "1"}).out);
  const std::vector<std::string> del_args = {
      "deletion-exp", "--graph", graph.string(), "--pairs", "3", "--degree-floor", "7",
      "--slack", "2", "--trials", "5", "--p-values", "0,0.1", "--seed", "4"};
  auto del1 = del_args, del2 = del_args;
  del1.insert(del1.end(), {"--out", (dir.path / "d1").string()});
  del2.insert(del2.end(), {"--out", (dir.path / "d2").string(), "--jobs", "2"});
  REQUIRE(run(del1).code == 0);
  REQUIRE(run(del2).code == 0);
  for (const char* f : {"deletion.csv", "deletion_stats.csv", "deletion_curves.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir.path / "d1" / f));
    CHECK(slurp(dir.path / "d1" / f) == slurp(dir.path / "d2" / f));
  }
  CHECK(slurp(dir.path / "d1" / "deletion.csv").rfind("p,pair_id,trial,fraction", 0) == 0);
  CHECK(slurp(dir.path / "d1" / "deletion_stats.csv").rfind("p,min,q1,median,q3,max,mean", 0) == 0);

  const std::vector<std::string> ratio_args = {"ratio-exp", "--n", "150", "--avg", "6", "--hubs", "1",
                                               "--ratios", "9", "--sequences", "2", "--pairs", "2",
                                               "--offsets", "1,2", "--seed", "9"};
  auto r1 = ratio_args, r2 = ratio_args;
  r1.insert(r1.end(), {"--out", (dir.path / "r1").string()});
  r2.insert(r2.end(), {"--out", (dir.path / "r2").string(), "--jobs", "2"});
  REQUIRE(run(r1).code == 0);
  REQUIRE(run(r2).code == 0);
  for (const char* f : {"ratio.csv", "ratio_stats.csv"}) {
    CAPTURE(f);
    CHECK(slurp(dir.path / "r1" / f) == slurp(dir.path / "r2" / f));
  }
  CHECK(slurp(dir.path / "r1" / "ratio.csv")
            .rfind("ratio_target,offset,sequence_id,pair_id,n_walks,n_simple,ratio", 0) == 0);

  auto rj = ratio_args;
  rj.insert(rj.end(), {"--format", "json"});
  const auto json = run(rj);
  CHECK(json.code == 0);
  CHECK(json.out.find("\"schema_version\": 1") != std::string::npos);
}
