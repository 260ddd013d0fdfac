#include <hyplat/io.hpp>
#include <hyplat/pipeline.hpp>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

using namespace hyplat;
namespace fs = std::filesystem;

namespace {

const char* kWorked3x3 = "3  -1 -3 -1  -3 14 8  -1 8 11";
const char* kWatson4x4 = "4  17 -17 20 -9  -17 -25 15 -6  20 15 4 -2  -9 -6 -2 1";

std::string tmp_path(const char* leaf) {
  return (fs::temp_directory_path() /
          (std::string("hyplat_") + std::to_string(getpid()) + "_" + leaf))
      .string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_quiet(const JobSpec& job, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int rc = run(job, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

}  // namespace

TEST_CASE("matrix parser accepts both text forms") {
  IntMatrix a{{-1, -3, -1}, {-3, 14, 8}, {-1, 8, 11}};
  CHECK(parse_matrix(kWorked3x3) == a);
  CHECK(parse_matrix("3\n-1 -3 -1\n-3 14 8\n-1 8 11\n") == a);
  CHECK(parse_matrix("[[-1,-3,-1],[-3,14,8],[-1,8,11]]") == a);
  CHECK(parse_matrix("[[-1, 0], [0, 1]]") == IntMatrix{{-1, 0}, {0, 1}});
  // count form: n followed by exactly n^2 entries
  CHECK(parse_matrix("2 -1 0 0 1") == IntMatrix{{-1, 0}, {0, 1}});
  // typographic minus from typeset sources
  CHECK(parse_matrix("2 \xe2\x88\x92" "1 0 0 1") == IntMatrix{{-1, 0}, {0, 1}});
  CHECK(parse_matrix("1 +7") == IntMatrix{{7}});
}

TEST_CASE("matrix parser rejects malformed input") {
  CHECK_THROWS_AS(parse_matrix(""), ParseError);
  CHECK_THROWS_AS(parse_matrix("abc"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 -1 0 0"), ParseError);      // one entry short
  CHECK_THROWS_AS(parse_matrix("2 -1 0 0 1 7"), ParseError);  // trailing entry
  CHECK_THROWS_AS(parse_matrix("0"), ParseError);
  CHECK_THROWS_AS(parse_matrix("65 1"), ParseError);
  CHECK_THROWS_AS(parse_matrix("[[1,0],[0]]"), ParseError);   // ragged rows
  CHECK_THROWS_AS(parse_matrix("[[1,0]]"), ParseError);       // not square
  CHECK_THROWS_AS(parse_matrix("[[1,2],[2,1]] junk"), ParseError);

  try {
    parse_matrix("2 1 2 3 4");
    FAIL("asymmetric matrix accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("not symmetric at row 1, column 2") != std::string::npos);
  }
  try {
    parse_matrix("3\n-1 -3 -1\n-3 14 8\n-1 8 x");
    FAIL("non-integer accepted");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("graph parser and gram construction") {
  GraphInput k4 = parse_graph("4  1 2  1 3  1 4  2 3  2 4  3 4");
  CHECK(k4.n == 4);
  CHECK(k4.edges.size() == 6);
  IntMatrix g = graph_to_gram(k4.edges, k4.n);
  IntMatrix expect{{2, -1, -1, -1}, {-1, 2, -1, -1}, {-1, -1, 2, -1}, {-1, -1, -1, 2}};
  CHECK(g == expect);
  Signature s = signature(g);
  CHECK(s.negative == 1);
  CHECK(s.positive == 3);

  // a path on two vertices is positive definite and must be refused downstream
  GraphInput p2 = parse_graph("2 1 2");
  IntMatrix gp = graph_to_gram(p2.edges, p2.n);
  CHECK(gp == IntMatrix{{2, -1}, {-1, 2}});
  CHECK_THROWS_AS(make_frame(gp), SignatureError);

  CHECK_THROWS_AS(parse_graph(""), ParseError);
  CHECK_THROWS_AS(parse_graph("2 1 1"), ParseError);    // self loop
  CHECK_THROWS_AS(parse_graph("2 1 3"), ParseError);    // vertex out of range
  CHECK_THROWS_AS(parse_graph("3 1 2 2"), ParseError);  // ends mid-pair
  CHECK_THROWS_AS(graph_to_gram({{1, 5}}, 4), ParseError);
  CHECK_THROWS_AS(graph_to_gram({{2, 2}}, 4), ParseError);
}

TEST_CASE("run reports the documented exit codes") {
  {
    JobSpec job;
    job.matrix_text = kWorked3x3;
    job.mode = "direct";
    job.verify_flag = true;
    job.no_timings = true;
    std::string text;
    CHECK(run_quiet(job, &text) == 0);
    CHECK(text.find("classes=9") != std::string::npos);
    CHECK(text.find("verification: ok") != std::string::npos);
  }
  {
    JobSpec job;  // positive definite input
    job.matrix_text = "2 1 0 0 1";
    CHECK(run_quiet(job) == 2);
  }
  {
    JobSpec job;  // parse error
    job.matrix_text = "garbage";
    CHECK(run_quiet(job) == 2);
  }
  {
    JobSpec job;  // no source at all
    CHECK(run_quiet(job) == 2);
  }
  {
    JobSpec job;  // two sources
    job.matrix_text = "2 -1 0 0 1";
    job.graph_text = "2 1 2";
    CHECK(run_quiet(job) == 2);
  }
  {
    JobSpec job;
    job.matrix_text = "2 -1 0 0 1";
    job.mode = "fancy";
    CHECK(run_quiet(job) == 2);
  }
  {
    JobSpec job;  // recovery orbit has index 24 > 8
    job.matrix_text = kWatson4x4;
    job.mode = "watson";
    job.orbit_budget = 8;
    CHECK(run_quiet(job) == 3);
  }
  {
    JobSpec job;  // graphs go through the same pipeline
    job.graph_text = "2 1 2";
    CHECK(run_quiet(job) == 2);
  }
}

TEST_CASE("json report round-trips and is byte-deterministic") {
  std::string p1 = tmp_path("r1.json"), p2 = tmp_path("r2.json");
  JobSpec job;
  job.matrix_text = kWorked3x3;
  job.mode = "direct";
  job.verify_flag = true;
  job.no_timings = true;
  job.json_path = p1;
  REQUIRE(run_quiet(job) == 0);
  job.json_path = p2;
  REQUIRE(run_quiet(job) == 0);

  std::string text = slurp(p1);
  CHECK(text == slurp(p2));
  fs::remove(p1);
  fs::remove(p2);

  nlohmann::json r = nlohmann::json::parse(text);
  CHECK(nlohmann::json::parse(r.dump()) == r);

  CHECK(r["input"]["n"] == 3);
  CHECK(r["input"]["det"] == "-155");
  CHECK(r["input"]["matrix"][0][1] == "-3");
  CHECK(r["mode"] == "direct");
  CHECK(r["minus_identity_included"] == true);
  CHECK(r["verification"]["ok"] == true);
  CHECK(r["verification"]["violations"].empty());
  CHECK(!r.contains("timings"));

  REQUIRE(r["classes"].size() == 9);
  const auto& c0 = r["classes"][0];
  CHECK(c0["vector"] == nlohmann::json({"1", "0", "0"}));
  CHECK(c0["N"] == "1");
  CHECK(c0["num_minvecs"] == 41);
  CHECK(c0["num_directions"] == 8);
  CHECK(c0["num_neighbours"] == 8);
  CHECK(c0["stabilizer_order"] == "2");
  CHECK(c0["stabilizer_generators"].size() == 1);

  REQUIRE(r["edges"].size() == 24);
  int labelled = 0;
  for (const auto& e : r["edges"]) {
    CHECK(e["from"].is_number_integer());
    CHECK(e["to"].is_number_integer());
    CHECK(e["neighbour"].is_array());
    if (!e["omega"].is_null()) labelled++;
  }
  CHECK(labelled == 16);
  CHECK(r["generators"].size() == 16);
}

TEST_CASE("watson mode is reported in the json output") {
  std::string p = tmp_path("w.json");
  JobSpec job;
  job.matrix_text = kWatson4x4;
  job.mode = "auto";
  job.no_timings = true;
  job.json_path = p;
  REQUIRE(run_quiet(job) == 0);
  nlohmann::json r = nlohmann::json::parse(slurp(p));
  fs::remove(p);

  CHECK(r["mode"] == "watson");
  CHECK(r["input"]["det"] == "-32");
  CHECK(r["watson"]["chain"] == nlohmann::json({"2", "2"}));
  CHECK(r["watson"]["det_watson"] == "-2");
  CHECK(r["watson"]["scale"] == "4");
  CHECK(r["classes"].size() == 2);
  CHECK(r["verification"] == "skipped");
  // recovered generators act on the original space and preserve the form
  IntMatrix A = parse_matrix(kWatson4x4);
  for (const auto& gj : r["generators"]) {
    IntMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = Int(gj[i][j].get<std::string>());
    CHECK(g * A * transpose(g) == A);
  }
}

TEST_CASE("dot export passes a minimal grammar check") {
  std::string p = tmp_path("g.dot");
  JobSpec job;
  job.matrix_text = kWorked3x3;
  job.mode = "direct";
  job.no_timings = true;
  job.dot_path = p;
  REQUIRE(run_quiet(job) == 0);
  std::string text = slurp(p);
  fs::remove(p);

  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "graph residue {");
  std::regex node_re(R"re(  c(\d+) \[label="\d+: \(-?\d+(, -?\d+)*\)"\];)re");
  std::regex edge_re(R"re(  c(\d+) -- c(\d+)( \[label="c\d+"\])?;)re");
  int nodes = 0, edges = 0, labelled = 0;
  bool closed = false;
  while (std::getline(in, line)) {
    if (line == "}") {
      closed = true;
      break;
    }
    std::smatch m;
    if (std::regex_match(line, m, node_re)) {
      nodes++;
    } else if (std::regex_match(line, m, edge_re)) {
      edges++;
      if (m[3].matched) labelled++;
    } else {
      FAIL("unrecognized dot line: " << line);
    }
  }
  CHECK(closed);
  CHECK(nodes == 9);
  CHECK(edges == 24);
  CHECK(labelled == 16);
}

TEST_CASE("batch emits deterministic csv") {
  {
    std::ostringstream out;
    batch(0, 3, 5, 42, true, out);
    CHECK(out.str() ==
          "index,n,det,chain,status,classes_direct,classes_watson,gens_direct,gens_recovered\n");
  }
  {
    std::ostringstream o1, o2;
    batch(3, 3, 6, 5, true, o1);
    batch(3, 3, 6, 5, true, o2);
    CHECK(o1.str() == o2.str());
    std::istringstream in(o1.str());
    std::string line;
    REQUIRE(std::getline(in, line));  // header checked above
    int rows = 0;
    while (std::getline(in, line)) {
      std::vector<std::string> cols;
      std::istringstream ls(line);
      std::string c;
      while (std::getline(ls, c, ',')) cols.push_back(c);
      REQUIRE(cols.size() == 9);
      CHECK(std::to_string(rows) == cols[0]);
      CHECK(cols[1] == "3");
      CHECK((cols[4] == "ok" || cols[4] == "budget"));
      if (cols[4] == "ok") CHECK(std::stol(cols[5]) >= 1);
      rows++;
    }
    CHECK(rows == 3);
  }
  {
    std::ostringstream out;  // timing columns present unless suppressed
    batch(0, 2, 5, 1, false, out);
    CHECK(out.str().find(",time_direct_s,time_watson_s") != std::string::npos);
  }
}
