#include "ptheta/combinatorics.hpp"
#include "ptheta/graph.hpp"
#include "ptheta/moment.hpp"
#include "ptheta/report.hpp"
#include "ptheta/theta.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ptheta;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_solver = 2;

const char* families_help =
    "Graph families (--family): complete:n, empty:n, cycle:n, path:n,\n"
    "circulant:n:s1,s2,..., petersen, clique_union:n1,...,nk,\n"
    "clique_plus_isolated:n1,m. Files are DIMACS edge format, vertices 1-based.\n"
    "Exit codes: 0 success, 1 input error, 2 solver failure.\n"
    "PTHETA_TOL overrides the default solver tolerance (1e-8).";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphSource {
  std::string path;
  std::string family;

  std::pair<Graph, std::string> load() const {
    if (!path.empty() && !family.empty()) throw InputError("give either a graph file or --family");
    if (!family.empty()) return {generate(family), family};
    if (path.empty()) throw InputError("no graph given (file or --family)");
    std::vector<std::string> warnings;
    Graph g = read_dimacs_file(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
    return {g, path};
  }
};

std::vector<BoundKind> parse_kinds(const std::string& list) {
  std::vector<BoundKind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_bound_kind(item));
  if (out.empty()) throw InputError("empty --bounds list");
  return out;
}

SolverConfig base_config(double tol) {
  SolverConfig cfg;
  if (const char* env = std::getenv("PTHETA_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw InputError("PTHETA_TOL is not a positive number");
    cfg.gap_tolerance = cfg.feasibility_tolerance = v;
  }
  if (tol > 0) cfg.gap_tolerance = cfg.feasibility_tolerance = tol;
  return cfg;
}

void print_text(const BoundsReport& r) {
  std::cout << "graph " << r.source << ": n=" << r.n << " m=" << r.m << ", bounds at "
            << (r.complemented ? "complement" : "graph") << '\n';
  for (const auto& tb : r.bounds) {
    const BoundValue& b = tb.bound;
    std::printf("  %-6s %10s  (rounded %s; %.10f, gap %.1e, residual %.1e, %d iterations)\n",
                short_name(b.kind).c_str(), format_truncated(b.value).c_str(),
                format_rounded(b.value).c_str(), b.value,
                b.residuals.relative_gap, b.residuals.worst_feasibility(), b.solution.iterations);
  }
  if (r.exact)
    std::cout << "  chi=" << r.exact->chi.value << " omega=" << r.exact->omega.value
              << " alpha=" << r.exact->alpha.value << '\n';
}

void dump_programs(const fs::path& dir, const Graph& g, const std::vector<BoundKind>& kinds) {
  fs::create_directories(dir);
  for (BoundKind k : kinds) {
    std::ofstream out(dir / (to_string(k) + ".json"));
    if (!out) throw InputError("cannot write to " + dir.string());
    write_program_json(out, build_program(k, g));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta-type bounds on the chromatic number"};
  app.footer(families_help);
  app.require_subcommand(1);
  app.fallthrough();
  double tol = 0;
  bool verbose = false;
  app.add_option("--tol", tol, "Solver gap and feasibility tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "Log solver iterations to stderr");

  GraphSource bounds_src;
  std::string bounds_list = "theta,theta-,theta+,that,that'";
  bool complemented = false, with_exact = false, as_json = false, as_csv = false;
  std::string dump_dir;
  auto* bounds = app.add_subcommand("bounds", "Evaluate theta-type bounds for one graph");
  bounds->add_option("graph", bounds_src.path, "DIMACS graph file");
  bounds->add_option("--family", bounds_src.family, "Generated graph, e.g. clique_union:4,3,2");
  bounds->add_option("--bounds", bounds_list, "Comma list of theta, theta-, theta+, that, that'")
      ->capture_default_str();
  bounds->add_flag("--complement", complemented, "Evaluate the bounds at the complement");
  bounds->add_flag("--exact", with_exact, "Add chi, omega, alpha of the input graph");
  auto* json_flag = bounds->add_flag("--json", as_json, "JSON output");
  bounds->add_flag("--csv", as_csv, "CSV output")->excludes(json_flag);
  bounds->add_option("--dump", dump_dir, "Write each conic program as JSON into this directory");

  std::string table_dir;
  auto* tables = app.add_subcommand("reproduce-tables", "Write table1.csv and table2.csv");
  tables->add_option("dir", table_dir, "Output directory")->required();

  int max_vertices = 9, random_count = 20;
  unsigned long seed = 1;
  std::vector<std::string> search_families, search_files;
  bool search_complement = false, search_complete = false, all_subgraphs = false, search_json = false;
  auto* search = app.add_subcommand("search-nonmonotone",
                                    "Find an induced subgraph H of G with that(H) > that(G)");
  search->add_option("--max-vertices", max_vertices, "Largest candidate size (at most 9)")
      ->capture_default_str();
  search->add_option("graphs", search_files, "DIMACS candidate files");
  search->add_option("--family", search_families, "Candidate family spec (repeatable)");
  search->add_flag("--complement", search_complement, "Use complements of the given candidates");
  search->add_flag("--complete", search_complete, "Candidates: complete graphs only");
  search->add_option("--random", random_count, "Random candidates added to the default set")
      ->capture_default_str();
  search->add_option("--seed", seed, "Seed for random candidates")->capture_default_str();
  search->add_flag("--all-subgraphs", all_subgraphs, "Include disconnected induced subgraphs");
  search->add_flag("--json", search_json, "JSON output");

  GraphSource exact_src;
  EnumerationGuards guards;
  bool exact_json = false;
  auto* exact = app.add_subcommand("exact", "Exact chi, omega, alpha and the projection cross-check");
  exact->add_option("graph", exact_src.path, "DIMACS graph file");
  exact->add_option("--family", exact_src.family, "Generated graph");
  exact->add_option("--max-chi-vertices", guards.chromatic, "Guard for chi")->capture_default_str();
  exact->add_option("--max-stable-vertices", guards.stable_sets, "Guard for omega and alpha")
      ->capture_default_str();
  exact->add_option("--max-projection-vertices", guards.partitions,
                    "Run the projection cross-check up to this size")
      ->capture_default_str();
  exact->add_flag("--json", exact_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    SolverConfig cfg = base_config(tol);
    if (verbose) cfg.trace = &std::cerr;

    if (*bounds) {
      const auto [g, source] = bounds_src.load();
      const auto kinds = parse_kinds(bounds_list);
      if (!dump_dir.empty()) dump_programs(dump_dir, complemented ? complement(g) : g, kinds);
      const BoundsReport r = compute_bounds_report(g, source, complemented, kinds, cfg, with_exact);
      if (as_json)
        std::cout << to_json(r).dump(2) << '\n';
      else if (as_csv)
        write_csv(std::cout, r);
      else
        print_text(r);
      return exit_ok;
    }

    if (*tables) {
      fs::create_directories(table_dir);
      int failed = 0;
      const auto write = [&](const char* file, const std::vector<std::string>& names,
                             const std::vector<TableRow>& rows) {
        std::ofstream out(fs::path(table_dir) / file);
        if (!out) throw InputError("cannot write to " + table_dir);
        write_table_csv(out, names, rows);
        for (const auto& r : rows) {
          failed += !r.ok;
          std::cout << file << ' ';
          for (int p : r.params) std::cout << p << ' ';
          if (r.ok)
            std::cout << "that=" << format_table(r.theta_hat) << " that'=" << format_table(r.theta_hat_prime)
                      << " theta=" << format_table(r.theta) << '\n';
          else
            std::cout << "FAILED " << r.error << '\n';
        }
      };
      write("table1.csv", {"n1", "n2", "n3"}, reproduce_table1(cfg));
      write("table2.csv", {"n1", "m"}, reproduce_table2(cfg));
      return failed ? exit_solver : exit_ok;
    }

    if (*search) {
      if (max_vertices < 1 || max_vertices > 9) throw InputError("--max-vertices must lie in [1, 9]");
      std::vector<LabeledGraph> candidates;
      for (const auto& f : search_families) candidates.push_back({f, generate(f)});
      for (const auto& p : search_files) candidates.push_back({p, read_dimacs_file(p)});
      if (search_complement)
        for (auto& c : candidates) c = {"complement(" + c.label + ")", complement(c.graph)};
      if (search_complete) {
        const auto more = complete_candidates(max_vertices);
        candidates.insert(candidates.end(), more.begin(), more.end());
      }
      if (candidates.empty()) {
        candidates = clique_union_candidates(max_vertices);
        const auto more = random_candidates(max_vertices, random_count, seed);
        candidates.insert(candidates.end(), more.begin(), more.end());
      }
      NonmonotoneOptions opt;
      opt.max_vertices = max_vertices;
      opt.connected_only = !all_subgraphs;
      const NonmonotoneResult r = search_nonmonotone(candidates, opt, cfg);
      if (search_json) {
        std::cout << to_json(r).dump(2) << '\n';
      } else if (!r.witness) {
        std::cout << "none found (" << r.graphs_examined << " graphs, " << r.subgraphs_examined
                  << " induced subgraphs)\n";
      } else {
        const auto& w = *r.witness;
        std::cout << "witness: H induced by {";
        for (std::size_t i = 0; i < w.subset.size(); ++i) std::cout << (i ? "," : "") << w.subset[i] + 1;
        std::cout << "} of G = " << w.parent_label << '\n';
        std::printf("  that(H) = %.8f > that(G) = %.8f\n", w.subgraph_value, w.parent_value);
        std::cout << "  H: n=" << w.subgraph.num_vertices() << " m=" << w.subgraph.num_edges()
                  << "; G: n=" << w.parent.num_vertices() << " m=" << w.parent.num_edges() << '\n';
      }
      return exit_ok;
    }

    if (*exact) {
      const auto [g, source] = exact_src.load();
      const ExactReport r = exact_report(g, guards);
      if (exact_json) {
        auto j = to_json(r);
        j["graph"]["source"] = source;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "graph " << source << ": n=" << r.n << " m=" << r.m << '\n'
                  << "  chi=" << r.values.chi.value << " omega=" << r.values.omega.value
                  << " alpha=" << r.values.alpha.value << '\n'
                  << "  colouring " << to_json(r.values.chi.witness).dump() << '\n';
        if (r.projection)
          std::cout << "  projection chi=" << r.projection->value << " ("
                    << r.projection->partitions_checked << " partitions checked)\n";
      }
      return exit_ok;
    }
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return exit_solver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_ok;
}
