// Command-line front end: graph construction, assignment generation, solving,
// verification, brute-force runs, hardness witnesses, and the linearity sweep.
//
// Exit codes: 0 success / Colored / Yes, 1 No / Unsupported, 2 usage or input
// error, 3 internal-consistency failure.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "torocolor/errors.hpp"
#include "torocolor/hardness.hpp"
#include "torocolor/lists.hpp"
#include "torocolor/oracle.hpp"
#include "torocolor/solver.hpp"
#include "torocolor/torus.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr long long kDefaultOracleBudget = 100000000LL;
constexpr long long kDefaultHardBudget = 1000000000LL;

long long env_budget(long long fallback) {
  const char* v = std::getenv("TOROCOLOR_BUDGET");
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return std::stoll(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("TOROCOLOR_BUDGET is not an integer");
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
}

json graph_json(const toro::Torus& G) {
  return json{{"r", G.r}, {"s", G.s}, {"t", G.t}};
}

toro::Torus graph_from_json(const json& j) {
  const json& g = j.contains("graph") ? j.at("graph") : j;
  return toro::build_torus(g.at("r").get<int>(), g.at("s").get<int>(),
                           g.at("t").get<int>());
}

toro::ListAssignment lists_from_json(const toro::Torus& G, const json& j) {
  std::vector<toro::ColorSet> ls;
  for (const json& row : j.at("lists")) ls.push_back(row.get<toro::ColorSet>());
  return toro::make_assignment(G.n, std::move(ls));
}

json lists_to_json(const toro::ListAssignment& L) {
  json out = json::array();
  for (int v = 0; v < L.n; ++v) out.push_back(L.at(v));
  return out;
}

json classification_json(const toro::Torus& G) {
  toro::GraphClass cls = toro::classify(G);
  json out{{"n", G.n},
           {"simple", G.simple()},
           {"has_loops", cls.has_loops},
           {"has_multi_edges", cls.has_multi_edges},
           {"three_chromatic", cls.is_three_chromatic},
           {"case", toro::to_string(cls.solver_case)}};
  if (!cls.unsupported_reason.empty()) out["unsupported_reason"] = cls.unsupported_reason;
  if (cls.rebase)
    out["rebase"] = json{{"r", cls.rebase->r}, {"s", cls.rebase->s}, {"t", cls.rebase->t}};
  return out;
}

int cmd_gen(int r, int s, int t, const std::string& out_path) {
  toro::Torus G = toro::build_torus(r, s, t);
  json out{{"graph", graph_json(G)}, {"classification", classification_json(G)}};
  write_output(out_path, out.dump(2) + "\n");
  return toro::classify(G).solver_case == toro::SolverCase::Unsupported ? 1 : 0;
}

int cmd_assign(const std::vector<int>& graph, const std::string& in_path, int k,
               std::uint64_t seed, int universe, const std::string& out_path) {
  toro::Torus G = graph.size() == 3
                      ? toro::build_torus(graph[0], graph[1], graph[2])
                      : graph_from_json(json::parse(read_input(in_path)));
  toro::ListAssignment L = toro::random_assignment(G.n, k, universe, seed);
  json out{{"graph", graph_json(G)},
           {"k", k},
           {"seed", seed},
           {"universe", universe},
           {"lists", lists_to_json(L)}};
  write_output(out_path, out.dump(2) + "\n");
  return 0;
}

int cmd_color(const std::string& in_path, const std::string& out_path) {
  json in = json::parse(read_input(in_path));
  toro::Torus G = graph_from_json(in);
  toro::ListAssignment L = lists_from_json(G, in);
  toro::SolveOutcome res = toro::solve(G, L);
  json out{{"graph", graph_json(G)},
           {"case", toro::to_string(toro::classify(G).solver_case)},
           {"status", toro::to_string(res.status)},
           {"exit_path", toro::to_string(res.exit_path)},
           {"total_touches", res.total_touches},
           {"max_touches_per_vertex", res.max_touches_per_vertex},
           {"linear_time_path", res.linear_time_path}};
  if (!res.message.empty()) out["message"] = res.message;
  if (res.coloring) out["colors"] = *res.coloring;
  write_output(out_path, out.dump(2) + "\n");
  return res.coloring.has_value() ? 0 : 1;
}

int cmd_verify(const std::string& assign_path, const std::string& coloring_path,
               const std::string& out_path) {
  json aj = json::parse(read_input(assign_path));
  toro::Torus G = graph_from_json(aj);
  toro::ListAssignment L = lists_from_json(G, aj);
  json cj = json::parse(read_input(coloring_path));
  const json& colors = cj.is_array() ? cj : cj.at("colors");
  toro::PartialColoring c = colors.get<toro::PartialColoring>();
  bool ok = static_cast<int>(c.size()) == G.n && toro::verify_coloring(G, L, c);
  json out{{"graph", graph_json(G)}, {"valid", ok}};
  write_output(out_path, out.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_oracle(const std::string& in_path, long long budget, const std::string& out_path) {
  json in = json::parse(read_input(in_path));
  toro::Torus G = graph_from_json(in);
  toro::ListAssignment L = lists_from_json(G, in);
  toro::OracleResult res = toro::is_L_colorable(toro::to_adj_lists(G), L.lists, budget);
  const char* status = res.status == toro::OracleResult::Status::Yes ? "Yes"
                       : res.status == toro::OracleResult::Status::No ? "No"
                                                                      : "BudgetExceeded";
  json out{{"graph", graph_json(G)},
           {"status", status},
           {"nodes", res.stats.nodes},
           {"max_depth", res.stats.max_depth}};
  if (res.status == toro::OracleResult::Status::Yes) out["witness"] = res.witness;
  write_output(out_path, out.dump(2) + "\n");
  return res.status == toro::OracleResult::Status::Yes ? 0 : 1;
}

int cmd_hard(const std::vector<int>& graph, bool verify, long long budget,
             const std::vector<int>& filler, const std::string& out_path) {
  toro::Torus G = toro::build_torus(graph[0], graph[1], graph[2]);
  toro::ColorSet l0(filler.begin(), filler.end());
  std::string reason;
  auto H = toro::hard_assignment(G, &reason, l0);
  if (!H) {
    json out{{"graph", graph_json(G)}, {"status", "None"}, {"reason", reason}};
    write_output(out_path, out.dump(2) + "\n");
    return 1;
  }
  json out{{"graph", graph_json(G)},
           {"family", toro::to_string(H->family)},
           {"lists", lists_to_json(H->lists)}};
  if (!H->via.empty()) out["via"] = H->via;
  int code = 0;
  if (verify) {
    toro::HardnessReport rep = toro::verify_hardness(G, H->lists, budget);
    out["verdict"] = toro::to_string(rep.verdict);
    out["nodes"] = rep.nodes;
    if (rep.verdict == toro::HardnessVerdict::FoundColoring) {
      out["witness"] = *rep.witness;
      code = 3;  // the generator promised an uncolorable assignment
    } else if (rep.verdict == toro::HardnessVerdict::BudgetExceeded) {
      code = 1;
    }
  }
  write_output(out_path, out.dump(2) + "\n");
  return code;
}

struct BenchRow {
  int n = 0;
  std::string kase;
  int trial = 0;
  long long total = 0;
  int maxper = 0;
  double millis = 0;
};

int cmd_bench(const std::vector<int>& sizes, const std::string& family, int repeat,
              int k, int universe, std::uint64_t seed, const std::string& out_path) {
  std::vector<std::string> fams;
  if (family == "all")
    fams = {"case1", "case2", "case3"};
  else
    fams = {family};
  std::vector<BenchRow> rows;
  for (int s : sizes) {
    for (const std::string& f : fams) {
      int r = 0, t = 0;
      if (f == "case1") {
        r = 4;
        t = 1;
      } else if (f == "case2") {
        r = 1;
        t = 2;
        if (s < 9 || s == 11) {
          std::cerr << "bench: skipping case2 size " << s << " (unsupported)\n";
          continue;
        }
      } else {
        r = 2;
        t = 2;
        if (s % 2 != 0 || s < 6) {
          std::cerr << "bench: skipping case3 size " << s << " (needs even s >= 6)\n";
          continue;
        }
      }
      toro::Torus G = toro::build_torus(r, s, t);
      for (int trial = 0; trial < repeat; ++trial) {
        toro::ListAssignment L = toro::random_assignment(
            G.n, k, universe, seed + static_cast<std::uint64_t>(trial));
        auto t0 = std::chrono::steady_clock::now();
        toro::SolveOutcome res = toro::solve(G, L);
        auto t1 = std::chrono::steady_clock::now();
        if (!res.coloring || !toro::verify_coloring(G, L, *res.coloring))
          throw toro::ConsistencyError("bench: solve failed on a supported tuple");
        BenchRow row;
        row.n = G.n;
        row.kase = f == "case1" ? "Case1" : f == "case2" ? "Case2" : "Case3";
        row.trial = trial;
        row.total = res.total_touches;
        row.maxper = res.max_touches_per_vertex;
        row.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rows.push_back(row);
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.kase != b.kase) return a.kase < b.kase;
    return a.trial < b.trial;
  });
  std::ostringstream csv;
  csv << "n,case,total_touches,max_touches_per_vertex,millis\n";
  for (const BenchRow& row : rows)
    csv << row.n << ',' << row.kase << ',' << row.total << ',' << row.maxper << ','
        << row.millis << '\n';
  write_output(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"5-list-coloring toolkit for 6-regular toroidal grid graphs"};
  app.require_subcommand(1);

  std::string in_path = "-";
  std::string out_path = "-";
  std::vector<int> graph_args;
  std::vector<int> filler{5, 6, 7};
  int k = 5, universe = 10, repeat = 3;
  std::uint64_t seed = 12345;
  long long budget = -1;
  bool do_verify = false;
  std::vector<int> sizes;
  std::string family = "all";
  std::string assign_path, coloring_path;
  int gr = 0, gs = 0, gt = 0;

  CLI::App* gen = app.add_subcommand("gen", "Emit graph JSON and classification");
  gen->add_option("r", gr, "columns")->required();
  gen->add_option("s", gs, "rows")->required();
  gen->add_option("t", gt, "wrap offset")->required();
  gen->add_option("--out", out_path, "output path (- for stdout)");

  CLI::App* assign = app.add_subcommand("assign", "Generate a random list assignment");
  assign->add_option("--graph", graph_args, "r s t")->expected(3);
  assign->add_option("--in", in_path, "graph JSON path (- for stdin)");
  assign->add_option("--k", k, "list size (default 5)");
  assign->add_option("--seed", seed, "RNG seed");
  assign->add_option("--universe", universe, "colors drawn from [0,U) (default 10)");
  assign->add_option("--out", out_path, "output path");

  CLI::App* color = app.add_subcommand("color", "Solve an assignment JSON");
  color->add_option("--in", in_path, "assignment JSON path (- for stdin)");
  color->add_option("--out", out_path, "output path");

  CLI::App* verify = app.add_subcommand("verify", "Check a coloring against an assignment");
  verify->add_option("--assignment", assign_path, "assignment JSON path")->required();
  verify->add_option("--coloring", coloring_path, "coloring JSON path (color output or bare array)")
      ->required();
  verify->add_option("--out", out_path, "output path");

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive list-colorability check");
  oracle->add_option("--in", in_path, "assignment JSON path (- for stdin)");
  oracle->add_option("--budget", budget, "node budget (default env TOROCOLOR_BUDGET or 1e8)");
  oracle->add_option("--out", out_path, "output path");

  CLI::App* hard = app.add_subcommand("hard", "Emit an uncolorable 3-assignment");
  hard->add_option("--graph", graph_args, "r s t")->expected(3)->required();
  hard->add_flag("--verify", do_verify, "confirm with the exhaustive checker");
  hard->add_option("--budget", budget, "node budget (default env TOROCOLOR_BUDGET or 1e9)");
  hard->add_option("--filler", filler, "list for unstructured vertices")->expected(3);
  hard->add_option("--out", out_path, "output path");

  CLI::App* bench = app.add_subcommand("bench", "Linearity sweep; CSV output");
  bench->add_option("--sizes", sizes, "row counts to sweep")->required()->delimiter(',');
  bench->add_option("--family", family, "case1|case2|case3|all")
      ->check(CLI::IsMember({"case1", "case2", "case3", "all"}));
  bench->add_option("--repeat", repeat, "trials per size (default 3)");
  bench->add_option("--k", k, "list size (default 5)");
  bench->add_option("--universe", universe, "color universe size (default 10)");
  bench->add_option("--seed", seed, "base RNG seed");
  bench->add_option("--out", out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gr, gs, gt, out_path);
    if (assign->parsed()) {
      if (graph_args.size() != 3 && !assign->count("--in"))
        throw std::invalid_argument("assign: provide --graph r s t or --in graph.json");
      return cmd_assign(graph_args, in_path, k, seed, universe, out_path);
    }
    if (color->parsed()) return cmd_color(in_path, out_path);
    if (verify->parsed()) return cmd_verify(assign_path, coloring_path, out_path);
    if (oracle->parsed())
      return cmd_oracle(in_path, budget > 0 ? budget : env_budget(kDefaultOracleBudget), out_path);
    if (hard->parsed())
      return cmd_hard(graph_args, do_verify,
                      budget > 0 ? budget : env_budget(kDefaultHardBudget), filler, out_path);
    if (bench->parsed())
      return cmd_bench(sizes, family, repeat, k, universe, seed, out_path);
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const toro::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
