#pragma once

// Orchestration behind the command line tool: load a form (matrix text or
// graph edge list), optionally run it through the Watson reduction, traverse
// the perfect-point graph, optionally recover the original group and verify,
// then emit a summary plus JSON and DOT reports. Exit codes: 0 done, 1
// verification failed, 2 bad input, 3 budget exceeded.

#include "hyplat/io.hpp"
#include "hyplat/voronoi.hpp"
#include "hyplat/watson.hpp"

#include <json.hpp>

#include <chrono>
#include <iostream>
#include <limits>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace hyplat {

struct JobSpec {
  std::string matrix_file;  // exactly one of the four sources may be set
  std::string matrix_text;
  std::string graph_file;
  std::string graph_text;
  std::string mode = "auto";  // direct | watson | auto
  std::string json_path;
  std::string dot_path;
  bool verify_flag = false;
  bool no_timings = false;
  long orbit_budget = 1L << 20;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_vec(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (const Int& x : v) a.push_back(x.get_str());
  return a;
}

inline ordered_json json_mat(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_dot(std::ostream& out, const TraverseResult& tr) {
  out << "graph residue {\n";
  for (const PerfectClass& c : tr.classes)
    out << "  c" << c.id << " [label=\"" << c.id << ": " << to_string(c.x) << "\"];\n";
  int connecting = 0;
  for (const GraphEdge& e : tr.edges) {
    out << "  c" << e.from << " -- c" << e.to;
    if (e.omega) out << " [label=\"c" << ++connecting << "\"]";
    out << ";\n";
  }
  out << "}\n";
}

}  // namespace detail

// Full pipeline for one form. Summary goes to `out`, diagnostics to `err`.
inline int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  using detail::ordered_json;
  int sources = !job.matrix_file.empty() + !job.matrix_text.empty() + !job.graph_file.empty() +
                !job.graph_text.empty();
  if (sources != 1) {
    err << "error: exactly one input source must be given\n";
    return 2;
  }
  if (job.mode != "direct" && job.mode != "watson" && job.mode != "auto") {
    err << "error: unknown mode " << job.mode << "\n";
    return 2;
  }

  auto t_start = std::chrono::steady_clock::now();
  IntMatrix A;
  std::string source;
  try {
    if (!job.matrix_file.empty()) {
      source = job.matrix_file;
      A = parse_matrix(detail::read_source(job.matrix_file));
    } else if (!job.matrix_text.empty()) {
      source = "inline";
      A = parse_matrix(job.matrix_text);
    } else {
      source = job.graph_file.empty() ? "inline graph" : job.graph_file;
      GraphInput g =
          parse_graph(job.graph_file.empty() ? job.graph_text : detail::read_source(job.graph_file));
      A = graph_to_gram(g.edges, g.n);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  ordered_json report;
  report["input"] = {{"source", source}, {"n", A.rows}, {"matrix", detail::json_mat(A)}};
  TraverseOptions opts;
  opts.orbit_budget = job.orbit_budget;

  try {
    report["input"]["det"] = det(A).get_str();

    // watson when asked for, or in auto mode when a filling applies
    WatsonResult w;
    bool reduced = false;
    double watson_s = 0;
    if (job.mode != "direct") {
      auto t0 = std::chrono::steady_clock::now();
      w = watson(A);
      watson_s = detail::seconds_since(t0);
      reduced = job.mode == "watson" || !w.chain.empty();
    }
    const IntMatrix& T = reduced ? w.W.gram : A;

    auto t1 = std::chrono::steady_clock::now();
    TraverseResult tr = traverse(T, opts);
    double traverse_s = detail::seconds_since(t1);

    std::vector<IntMatrix> gens = tr.generators;
    double recover_s = 0;
    if (reduced) {
      auto t2 = std::chrono::steady_clock::now();
      ConeFrame f = make_frame(A);
      gens = recover_aut(f, w.W, tr.generators, job.orbit_budget);
      recover_s = detail::seconds_since(t2);
      ordered_json chain = ordered_json::array();
      for (const Int& p : w.chain) chain.push_back(p.get_str());
      report["mode"] = "watson";
      report["watson"] = {{"chain", std::move(chain)},
                          {"det_original", det(A).get_str()},
                          {"det_watson", det(w.W.gram).get_str()},
                          {"gram", detail::json_mat(w.W.gram)},
                          {"basis", detail::json_mat(w.W.basis)},
                          {"scale", w.W.scale.get_str()}};
    } else {
      report["mode"] = "direct";
    }

    ordered_json classes = ordered_json::array();
    for (const PerfectClass& c : tr.classes) {
      ordered_json gens_j = ordered_json::array();
      for (const IntMatrix& g : c.stab.gens) gens_j.push_back(detail::json_mat(g));
      classes.push_back({{"vector", detail::json_vec(c.x)},
                         {"N", norm_N(tr.frame, c.x).get_str()},
                         {"num_minvecs", c.mv.vectors.size()},
                         {"num_directions", c.rays},
                         {"num_neighbours", c.neighbours()},
                         {"stabilizer_order", c.stab.order.get_str()},
                         {"stabilizer_generators", std::move(gens_j)}});
    }
    report["classes"] = std::move(classes);

    ordered_json edges = ordered_json::array();
    for (const GraphEdge& e : tr.edges) {
      ordered_json ej = {{"from", e.from}, {"to", e.to}, {"neighbour", detail::json_vec(e.neighbour)}};
      ej["omega"] = e.omega ? detail::json_mat(*e.omega) : ordered_json(nullptr);
      edges.push_back(std::move(ej));
    }
    report["edges"] = std::move(edges);

    ordered_json gens_j = ordered_json::array();
    for (const IntMatrix& g : gens) gens_j.push_back(detail::json_mat(g));
    report["generators"] = std::move(gens_j);
    report["minus_identity_included"] = true;

    bool verify_failed = false;
    double verify_s = 0;
    if (job.verify_flag) {
      auto t3 = std::chrono::steady_clock::now();
      VerifyReport vr = verify(tr);
      verify_s = detail::seconds_since(t3);
      ordered_json viol = ordered_json::array();
      for (const Violation& v : vr.violations) viol.push_back({{"code", v.code}, {"detail", v.detail}});
      report["verification"] = {{"ok", vr.ok}, {"violations", std::move(viol)}};
      verify_failed = !vr.ok;
    } else {
      report["verification"] = "skipped";
    }

    if (!job.no_timings)
      report["timings"] = {{"watson_s", watson_s},
                          {"traverse_s", traverse_s},
                          {"recover_s", recover_s},
                          {"verify_s", verify_s},
                          {"total_s", detail::seconds_since(t_start)}};

    if (!job.json_path.empty()) {
      std::ofstream jf(job.json_path);
      if (!jf) throw Error("cannot write " + job.json_path);
      jf << report.dump(2) << "\n";
    }
    if (!job.dot_path.empty()) {
      std::ofstream df(job.dot_path);
      if (!df) throw Error("cannot write " + job.dot_path);
      detail::write_dot(df, tr);
    }

    out << "n=" << A.rows << " det=" << det(A).get_str() << " mode="
        << report["mode"].get<std::string>() << "\n";
    if (reduced)
      out << "watson: det " << det(A).get_str() << " -> " << det(w.W.gram).get_str() << " after "
          << w.chain.size() << " filling(s)\n";
    out << "classes=" << tr.classes.size() << " edges=" << tr.edges.size()
        << " generators=" << gens.size() << " (with -identity implied)\n";
    if (job.verify_flag)
      out << "verification: " << (verify_failed ? "FAILED" : "ok") << "\n";
    if (!job.no_timings) out << "time: " << detail::seconds_since(t_start) << "s\n";

    return verify_failed ? 1 : 0;
  } catch (const OrbitBudgetError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace detail {

// Rejection sampling on top of the standardized engine keeps batch output
// identical across standard library implementations.
struct BatchRng {
  std::mt19937_64 eng;
  explicit BatchRng(uint64_t seed) : eng(seed) {}
  long uniform(long lo, long hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    uint64_t limit = std::numeric_limits<uint64_t>::max() -
                     (std::numeric_limits<uint64_t>::max() % span);
    uint64_t v;
    do {
      v = eng();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
  }
};

}  // namespace detail

// Random hyperbolic forms through both pipelines; one CSV row per form.
inline int batch(long count, int dim, long bound, uint64_t seed, bool no_timings,
                 std::ostream& out) {
  detail::BatchRng rng(seed);
  out << "index,n,det,chain,status,classes_direct,classes_watson,gens_direct,gens_recovered";
  if (!no_timings) out << ",time_direct_s,time_watson_s";
  out << "\n";
  for (long k = 0; k < count; ++k) {
    IntMatrix A(dim, dim);
    for (;;) {
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
          A(i, j) = rng.uniform(-bound, bound);
          A(j, i) = A(i, j);
        }
      if (sgn(det(A)) == 0) continue;
      Signature s = signature(A);
      if (s.negative == 1 && s.positive == dim - 1) break;
    }
    out << k << "," << dim << "," << det(A).get_str() << ",";

    std::string status = "ok";
    long cd = -1, cw = -1, gd = -1, gr = -1;
    double td = 0, tw = 0;
    std::string chain;
    try {
      auto t0 = std::chrono::steady_clock::now();
      TraverseResult dir = traverse(A);
      td = detail::seconds_since(t0);
      cd = static_cast<long>(dir.classes.size());
      gd = static_cast<long>(dir.generators.size());

      auto t1 = std::chrono::steady_clock::now();
      WatsonResult w = watson(A);
      for (const Int& p : w.chain) chain += (chain.empty() ? "" : "+") + p.get_str();
      TraverseResult via = traverse(w.W.gram);
      cw = static_cast<long>(via.classes.size());
      std::vector<IntMatrix> rec = recover_aut(make_frame(A), w.W, via.generators);
      gr = static_cast<long>(rec.size());
      tw = detail::seconds_since(t1);
    } catch (const OrbitBudgetError&) {
      status = "budget";
    }
    out << chain << "," << status << "," << cd << "," << cw << "," << gd << "," << gr;
    if (!no_timings) out << "," << td << "," << tw;
    out << "\n";
  }
  return 0;
}

}  // namespace hyplat
