#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cubesep/cli.hpp"
#include "cubesep/errors.hpp"
#include "cubesep/io.hpp"
#include "support.hpp"

using namespace cubesep;
using namespace cubesep::testing;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "cubesep-io-test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_file(const std::string& name,
                                 const std::string& content) {
  auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

struct CliResult {
  int code;
  json out;       // null when stdout held no JSON
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  json parsed;
  if (!out.str().empty() && out.str()[0] == '{')
    parsed = json::parse(out.str());
  return {code, parsed, err.str()};
}

}  // namespace

TEST_CASE("graph files round-trip through the canonical form") {
  std::istringstream in("# comment\nvertices a b c\nedge a b\nedge b c\n");
  DefiningGraph g = parse_graph(in, "test");
  CHECK(g.size() == 3);
  CHECK(g.adjacent(0, 1));
  CHECK(!g.adjacent(0, 2));
  std::string canon = serialize_graph(g);
  std::istringstream again(canon);
  CHECK(serialize_graph(parse_graph(again, "test")) == canon);
}

TEST_CASE("graph parsing rejects malformed input") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_graph(in, "test"), InputError);
  };
  bad("");                                    // no vertices line
  bad("vertices a a\n");                      // duplicate name
  bad("vertices a b\nedge a x\n");            // unknown endpoint
  bad("vertices a\nedge a a\n");              // self-edge
  bad("vertices a\nvertices b\n");            // two vertex lines
  bad("vertices a b\nlink a b\n");            // unknown directive
  bad("vertices a b\nedge a b\nedge a b\n");  // duplicate edge
}

TEST_CASE("complex files round-trip and validate") {
  std::string text =
      "graph g.graph\nbase 1\nvertex 0\nvertex 1\nvertex 2\n"
      "edge v 0 1\nedge v 1 2\nedge v 2 0\n";
  DefiningGraph zg = graph_z();
  std::istringstream in(text);
  LabeledComplex z = parse_complex(in, zg, "test");
  CHECK(z.size() == 3);
  CHECK(z.base() == 1);
  CHECK(z.has_edge(2, 0, 0));
  std::string canon = serialize_complex(z, "g.graph");
  std::istringstream again(canon);
  CHECK(serialize_complex(parse_complex(again, zg, "test"), "g.graph") ==
        canon);
}

TEST_CASE("complex parsing rejects malformed input") {
  DefiningGraph zg = graph_z();
  auto bad = [&](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_complex(in, zg, "test"), InputError);
  };
  bad("vertex 0\nvertex 2\n");                        // ids not dense
  bad("vertex 0\nbase 4\n");                          // base out of range
  bad("vertex 0\nedge w 0 0\n");                      // unknown generator
  bad("vertex 0\nvertex 1\nedge v 0 1\nedge v 0 0\n");  // sigma conflict
  bad("vertex 0\nbase 0\nbase 0\n");                  // duplicate base
  bad("vertex 0\nedge v 0 3\n");                      // endpoint out of range
}

TEST_CASE("load_complex resolves the graph reference next to the file") {
  write_file("line.graph", "vertices v\n");
  auto zpath = write_file("z3.cx",
                          "graph line.graph\nbase 0\nvertex 0\nvertex 1\n"
                          "vertex 2\nedge v 0 1\nedge v 1 2\nedge v 2 0\n");
  LabeledComplex z = load_complex(zpath);
  CHECK(z.size() == 3);
  CHECK(z.graph().name(0) == "v");
}

TEST_CASE("word parsing accepts inverse markers only") {
  DefiningGraph g = graph_z2();
  Word w = parse_word(g, "a b^-1  a");
  REQUIRE(w.size() == 3);
  CHECK(w[1] == Letter(1, -1));
  CHECK(parse_word(g, "").empty());
  CHECK_THROWS_AS(parse_word(g, "a^2"), InputError);
  CHECK_THROWS_AS(parse_word(g, "x"), InputError);
  CHECK_THROWS_AS(parse_word(g, "a^"), InputError);
}

TEST_CASE("cli normalize emits the canonical spelling") {
  auto gpath = write_file("flat.graph", "vertices a b\nedge a b\n");
  auto r = cli({"normalize", "-g", gpath.string(), "b", "a", "a^-1"});
  REQUIRE(r.code == 0);
  CHECK(r.out["schema"] == 1);
  CHECK(r.out["normal_form"] == "b");
  CHECK(r.out["length"] == 1);
}

TEST_CASE("cli membership and separation on the cyclic-cover complex") {
  write_file("line.graph", "vertices v\n");
  auto zpath = write_file("z3.cx",
                          "graph line.graph\nbase 0\nvertex 0\nvertex 1\n"
                          "vertex 2\nedge v 0 1\nedge v 1 2\nedge v 2 0\n");

  auto yes = cli({"member", "-z", zpath.string(), "v", "v", "v"});
  REQUIRE(yes.code == 0);
  CHECK(yes.out["member"] == true);

  auto no = cli({"member", "-z", zpath.string(), "v"});
  REQUIRE(no.code == 0);
  CHECK(no.out["member"] == false);

  auto sep = cli({"separate", "-z", zpath.string(), "v"});
  REQUIRE(sep.code == 0);
  CHECK(sep.out["index"] == 3);
  CHECK(sep.out["bound"] == 6);
  CHECK(sep.out["verified"] == true);
  CHECK(sep.out["cover"]["vertices"] == 3);

  auto in_subgroup = cli({"separate", "-z", zpath.string(), "v", "v", "v"});
  CHECK(in_subgroup.code == 1);

  auto tra = cli({"transversal", "-z", zpath.string(), "v"});
  REQUIRE(tra.code == 0);
  CHECK(tra.out["index"] == 3);
  CHECK(tra.out["words"].size() == 3);
}

TEST_CASE("cli theorem-a reports the construction and its verification") {
  write_file("flat.graph", "vertices a b\nedge a b\n");
  auto zpath = write_file("aloop.cx",
                          "graph flat.graph\nbase 0\nvertex 0\nedge a 0 0\n");
  auto r = cli({"theorem-a", "-z", zpath.string(), "b"});
  REQUIRE(r.code == 0);
  CHECK(r.out["vertices"] == 2);
  CHECK(r.out["vertex_bound"] == 2);
  CHECK(r.out["verification"]["passed"] == true);
  CHECK(r.out["stats"]["chain_length"] == 1);
  CHECK(r.out["stats"]["chain_fallback"] == false);
}

TEST_CASE("cli completion, check and hull") {
  write_file("flat.graph", "vertices a b\nedge a b\n");
  auto zpath = write_file("aloop.cx",
                          "graph flat.graph\nbase 0\nvertex 0\nedge a 0 0\n");
  auto comp = cli({"complete", "-z", zpath.string()});
  REQUIRE(comp.code == 0);
  CHECK(comp.out["degree"] == 1);
  CHECK(comp.out["edges"].size() == 2);

  auto badpath = write_file("open.cx",
                            "graph flat.graph\nbase 0\nvertex 0\nvertex 1\n"
                            "edge a 0 1\nedge b 0 0\n");
  auto chk = cli({"check", "-z", badpath.string()});
  REQUIRE(chk.code == 0);
  CHECK(chk.out["passed"] == false);
  CHECK(chk.out["violations"].size() == 2);  // the loop germ carries both signs
  CHECK(chk.out["violations"][0]["vertex"] == 0);

  auto gpath = scratch_dir() / "flat.graph";
  auto hull = cli({"hull", "-g", gpath.string(), "-p", "", "-p", "a b"});
  REQUIRE(hull.code == 0);
  CHECK(hull.out["vertices"].size() == 4);
  CHECK(hull.out["edges"].size() == 4);
}

TEST_CASE("cli oracle and growth with budgets") {
  auto gpath = write_file("line.graph", "vertices v\n");
  auto r = cli({"oracle", "-g", gpath.string(), "-s", "v v v", "v"});
  REQUIRE(r.code == 0);
  CHECK(r.out["index"] == 3);
  CHECK(r.out["budget_hit"] == false);

  write_file("flat.graph", "vertices a b\nedge a b\n");
  auto fpath = scratch_dir() / "flat.graph";
  auto starved =
      cli({"oracle", "-g", fpath.string(), "-s", "a", "--budget", "1", "b"});
  CHECK(starved.code == 4);
  CHECK(starved.out["budget_hit"] == true);
  CHECK(starved.out["index"].is_null());

  auto zpath = scratch_dir() / "z3.cx";
  write_file("z3.cx",
             "graph line.graph\nbase 0\nvertex 0\nvertex 1\nvertex 2\n"
             "edge v 0 1\nedge v 1 2\nedge v 2 0\n");
  auto growth = cli({"sep-growth", "-z", zpath.string(), "-n", "2"});
  REQUIRE(growth.code == 0);
  CHECK(growth.out["max_index"] == 3);
  CHECK(growth.out["tested"] == 4);
  CHECK(growth.out["unresolved"] == 0);
}

TEST_CASE("cli error handling maps exception families to exit codes") {
  auto r0 = cli({"member", "-z", "/nonexistent/file.cx", "v"});
  CHECK(r0.code == 1);
  CHECK(!r0.err.empty());

  write_file("line.graph", "vertices v\n");
  write_file("flat.graph", "vertices a b\nedge a b\n");
  auto zpath = scratch_dir() / "z3.cx";
  write_file("z3.cx",
             "graph line.graph\nbase 0\nvertex 0\nvertex 1\nvertex 2\n"
             "edge v 0 1\nedge v 1 2\nedge v 2 0\n");
  auto mismatch = cli({"member", "-z", zpath.string(), "-g",
                       (scratch_dir() / "flat.graph").string(), "v"});
  CHECK(mismatch.code == 1);

  auto badword = cli({"member", "-z", zpath.string(), "q"});
  CHECK(badword.code == 1);

  auto nocmd = cli({});
  CHECK(nocmd.code != 0);
}
