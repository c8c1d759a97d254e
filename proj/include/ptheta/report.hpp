#pragma once

#include "ptheta/combinatorics.hpp"
#include "ptheta/conic.hpp"
#include "ptheta/graph.hpp"
#include "ptheta/theta.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ptheta {

inline constexpr const char* tool_version = "0.1.0";

/// x truncated (not rounded) to the given number of decimals, after snapping
/// values within 1e-6 of the next grid point up.
double truncate_decimals(double x, int decimals = 3);
/// Truncated value printed with exactly `decimals` digits: "3.222", "1.000".
std::string format_truncated(double x, int decimals = 3);
/// Rounded to `decimals` digits: "3.968".
std::string format_rounded(double x, int decimals = 3);
/// Table style: integers without decimals ("3"), otherwise three truncated
/// decimals ("3.666"); with rounded = true the rounded form ("3.667").
std::string format_table(double x, bool rounded = false);

struct TimedBound {
  BoundValue bound;
  double seconds = 0;
};

struct ExactValues {
  ChiResult chi;
  AlphaResult omega;
  AlphaResult alpha;
};

struct BoundsReport {
  int n = 0;
  int m = 0;
  std::string source;
  bool complemented = false;  // bounds evaluated at the complement
  std::vector<TimedBound> bounds;
  std::optional<ExactValues> exact;  // of the input graph
  SolverConfig solver;
};

/// Evaluates each kind at g (or its complement) and optionally the exact
/// invariants of g. Throws SolverFailure, GuardExceeded.
BoundsReport compute_bounds_report(const Graph& g, const std::string& source, bool complemented,
                                   const std::vector<BoundKind>& kinds, const SolverConfig& cfg,
                                   bool exact, const EnumerationGuards& guards = {});

nlohmann::json to_json(const BoundsReport& r);
void write_csv(std::ostream& out, const BoundsReport& r);

// Clique-union families evaluated at their complements.

struct TableRow {
  std::vector<int> params;
  double theta_hat = 0;
  double theta_hat_prime = 0;
  double theta = 0;
  bool ok = false;
  std::string error;
  double worst_gap = 0;          // largest relative gap over the three solves
  double worst_feasibility = 0;  // largest residual over the three solves
};

/// (n1, n2, n3) for G(n1, n2, n3) = clique_union(n1, n2, n3).
std::vector<std::vector<int>> table1_parameters();
/// (n1, m) for G(n1, e_m) = clique_plus_isolated(n1, m).
std::vector<std::vector<int>> table2_parameters();

TableRow evaluate_table1_row(const std::vector<int>& params, const SolverConfig& cfg);
TableRow evaluate_table2_row(const std::vector<int>& params, const SolverConfig& cfg);

/// Rows evaluated concurrently, returned in parameter order.
std::vector<TableRow> reproduce_table1(const SolverConfig& cfg);
std::vector<TableRow> reproduce_table2(const SolverConfig& cfg);

/// CSV with a header; full precision columns followed by table-style ones and
/// a status column.
void write_table_csv(std::ostream& out, const std::vector<std::string>& param_names,
                     const std::vector<TableRow>& rows);

// Induced subgraphs with a larger theta_hat than their parent.

struct LabeledGraph {
  std::string label;
  Graph graph;
};

struct NonmonotoneOptions {
  int max_vertices = 9;
  bool connected_only = true;
  double margin = 1e-4;
};

struct NonmonotoneWitness {
  std::string parent_label;
  Graph parent;
  std::vector<int> subset;  // 0-based vertices of the parent
  Graph subgraph;
  double parent_value = 0;
  double subgraph_value = 0;
};

struct NonmonotoneResult {
  std::optional<NonmonotoneWitness> witness;
  int graphs_examined = 0;
  int subgraphs_examined = 0;
  int solves = 0;
};

/// Complements of clique_union over all partitions of n <= max_vertices, in
/// ascending n.
std::vector<LabeledGraph> clique_union_candidates(int max_vertices);
std::vector<LabeledGraph> complete_candidates(int max_vertices);
/// G(n, 1/2) graphs with n drawn from [2, max_vertices].
std::vector<LabeledGraph> random_candidates(int max_vertices, int count, unsigned long seed);

/// Candidates are visited in ascending vertex count; subsets of each by
/// ascending size, then lexicographically. Stops at the first witness.
NonmonotoneResult search_nonmonotone(std::vector<LabeledGraph> candidates,
                                     const NonmonotoneOptions& opt, const SolverConfig& cfg);

nlohmann::json to_json(const NonmonotoneResult& r);

// Exact invariants.

struct ExactReport {
  int n = 0;
  int m = 0;
  ExactValues values;
  std::optional<ProjectionChiResult> projection;  // when n <= guards.partitions
};

ExactReport exact_report(const Graph& g, const EnumerationGuards& guards = {});
nlohmann::json to_json(const ExactReport& r);

/// Vertex sets as 1-based lists.
nlohmann::json to_json(const Partition& p);

}  // namespace ptheta
