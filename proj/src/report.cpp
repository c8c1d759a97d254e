#include "ptheta/report.hpp"

#include "ptheta/moment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <ostream>
#include <random>

namespace ptheta {

double truncate_decimals(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor((x + 1e-6) * scale) / scale;
}

std::string format_truncated(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, truncate_decimals(x, decimals));
  return buf;
}

std::string format_rounded(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string format_table(double x, bool rounded) {
  const std::string s = rounded ? format_rounded(x, 3) : format_truncated(x, 3);
  if (s.ends_with(".000")) return s.substr(0, s.size() - 4);
  return s;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nlohmann::json vertex_list(const VertexSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (int v : s) out.push_back(v + 1);
  return out;
}

nlohmann::json residual_json(const ResidualReport& r) {
  return {{"primal", r.primal},
          {"dual", r.dual},
          {"relative_gap", r.relative_gap},
          {"complementarity", r.complementarity},
          {"min_psd_eigenvalue", r.min_eigenvalue()},
          {"min_orthant_entry", r.min_orthant_entry}};
}

}  // namespace

nlohmann::json to_json(const Partition& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& part : p.parts) out.push_back(vertex_list(part));
  return out;
}

BoundsReport compute_bounds_report(const Graph& g, const std::string& source, bool complemented,
                                   const std::vector<BoundKind>& kinds, const SolverConfig& cfg,
                                   bool exact, const EnumerationGuards& guards) {
  BoundsReport r;
  r.n = g.num_vertices();
  r.m = g.num_edges();
  r.source = source;
  r.complemented = complemented;
  r.solver = cfg;
  r.solver.trace = nullptr;
  if (exact) {
    ExactValues v;
    v.chi = chi_exact(g, guards.chromatic);
    v.omega = omega_exact(g, guards.stable_sets);
    v.alpha = alpha_exact(g, guards.stable_sets);
    r.exact = v;
  }
  const Graph target = complemented ? complement(g) : g;
  for (BoundKind k : kinds) {
    const auto t0 = std::chrono::steady_clock::now();
    TimedBound tb{eval_bound(k, target, cfg), 0.0};
    tb.seconds = seconds_since(t0);
    r.bounds.push_back(std::move(tb));
  }
  return r;
}

nlohmann::json to_json(const BoundsReport& r) {
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& tb : r.bounds) {
    const BoundValue& b = tb.bound;
    bounds.push_back({{"kind", to_string(b.kind)},
                      {"name", short_name(b.kind)},
                      {"value", b.value},
                      {"display", format_truncated(b.value)},
                      {"display_rounded", format_rounded(b.value)},
                      {"status", to_string(b.solution.status)},
                      {"primal_objective", b.solution.primal_objective},
                      {"dual_objective", b.solution.dual_objective},
                      {"iterations", b.solution.iterations},
                      {"dropped_rows", b.solution.dropped_rows.size()},
                      {"seconds", tb.seconds},
                      {"fingerprint", b.graph_fingerprint},
                      {"residuals", residual_json(b.residuals)}});
  }
  nlohmann::json j = {
      {"tool", "ptheta"},
      {"version", tool_version},
      {"graph", {{"n", r.n}, {"m", r.m}, {"source", r.source}}},
      {"evaluated_at", r.complemented ? "complement" : "graph"},
      {"bounds", bounds},
      {"solver",
       {{"gap_tolerance", r.solver.gap_tolerance},
        {"feasibility_tolerance", r.solver.feasibility_tolerance},
        {"max_iterations", r.solver.max_iterations}}}};
  if (r.exact)
    j["exact"] = {{"chi", r.exact->chi.value},
                  {"omega", r.exact->omega.value},
                  {"alpha", r.exact->alpha.value},
                  {"colouring", to_json(r.exact->chi.witness)},
                  {"clique", vertex_list(r.exact->omega.witness)},
                  {"stable_set", vertex_list(r.exact->alpha.witness)}};
  return j;
}

void write_csv(std::ostream& out, const BoundsReport& r) {
  out << "n,m,evaluated_at,kind,value,display,display_rounded,status,iterations,relative_gap,primal_residual,"
         "dual_residual\n";
  const char* at = r.complemented ? "complement" : "graph";
  char buf[64];
  for (const auto& tb : r.bounds) {
    const BoundValue& b = tb.bound;
    std::snprintf(buf, sizeof buf, "%.10f", b.value);
    out << r.n << ',' << r.m << ',' << at << ',' << short_name(b.kind) << ',' << buf << ','
        << format_truncated(b.value) << ',' << format_rounded(b.value) << ','
        << to_string(b.solution.status) << ','
        << b.solution.iterations << ',' << b.residuals.relative_gap << ',' << b.residuals.primal
        << ',' << b.residuals.dual << '\n';
  }
  if (r.exact) {
    const std::pair<const char*, int> rows[] = {
        {"chi", r.exact->chi.value}, {"omega", r.exact->omega.value}, {"alpha", r.exact->alpha.value}};
    for (const auto& [name, v] : rows)
      out << r.n << ',' << r.m << ",graph," << name << ',' << v << ',' << v << ',' << v << ",exact,,,,\n";
  }
}

std::vector<std::vector<int>> table1_parameters() {
  return {{3, 3, 3}, {4, 3, 2}, {4, 4, 1}, {5, 2, 2}, {5, 3, 1}, {6, 2, 1}, {7, 1, 1}};
}

std::vector<std::vector<int>> table2_parameters() {
  std::vector<std::vector<int>> out;
  for (int n1 = 2; n1 <= 8; ++n1) out.push_back({n1, 9 - n1});
  return out;
}

namespace {

TableRow evaluate_row(std::vector<int> params, const Graph& family, const SolverConfig& cfg) {
  TableRow row;
  row.params = std::move(params);
  try {
    const Graph g = complement(family);
    double* slots[] = {&row.theta_hat, &row.theta_hat_prime, &row.theta};
    const BoundKind kinds[] = {BoundKind::theta_hat, BoundKind::theta_hat_prime, BoundKind::theta};
    for (int k = 0; k < 3; ++k) {
      const BoundValue v = eval_bound(kinds[k], g, cfg);
      *slots[k] = v.value;
      row.worst_gap = std::max(row.worst_gap, v.residuals.relative_gap);
      row.worst_feasibility = std::max(row.worst_feasibility, v.residuals.worst_feasibility());
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<TableRow> evaluate_rows(const std::vector<std::vector<int>>& params,
                                    TableRow (*eval)(const std::vector<int>&, const SolverConfig&),
                                    const SolverConfig& cfg) {
  std::vector<std::future<TableRow>> jobs;
  for (const auto& p : params) jobs.push_back(std::async(std::launch::async, eval, p, cfg));
  std::vector<TableRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

}  // namespace

TableRow evaluate_table1_row(const std::vector<int>& params, const SolverConfig& cfg) {
  return evaluate_row(params, clique_union(params), cfg);
}

TableRow evaluate_table2_row(const std::vector<int>& params, const SolverConfig& cfg) {
  if (params.size() != 2) throw std::invalid_argument("table 2 rows take (n1, m)");
  return evaluate_row(params, clique_plus_isolated(params[0], params[1]), cfg);
}

std::vector<TableRow> reproduce_table1(const SolverConfig& cfg) {
  SolverConfig c = cfg;
  c.trace = nullptr;
  return evaluate_rows(table1_parameters(), &evaluate_table1_row, c);
}

std::vector<TableRow> reproduce_table2(const SolverConfig& cfg) {
  SolverConfig c = cfg;
  c.trace = nullptr;
  return evaluate_rows(table2_parameters(), &evaluate_table2_row, c);
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& param_names,
                     const std::vector<TableRow>& rows) {
  for (const auto& p : param_names) out << p << ',';
  out << "theta_hat,theta_hat_prime,theta,theta_hat_3dp,theta_hat_prime_3dp,theta_3dp,"
         "theta_hat_3dp_rounded,theta_hat_prime_3dp_rounded,theta_3dp_rounded,status\n";
  char buf[64];
  for (const auto& r : rows) {
    for (int p : r.params) out << p << ',';
    if (!r.ok) {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      out << ",,,,,,,,,failed: " << msg << '\n';
      continue;
    }
    for (double v : {r.theta_hat, r.theta_hat_prime, r.theta}) {
      std::snprintf(buf, sizeof buf, "%.8f", v);
      out << buf << ',';
    }
    for (double v : {r.theta_hat, r.theta_hat_prime, r.theta}) out << format_table(v) << ',';
    for (double v : {r.theta_hat, r.theta_hat_prime, r.theta}) out << format_table(v, true) << ',';
    out << "ok\n";
  }
}

namespace {

void integer_partitions(int n, int max_part, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    integer_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::vector<LabeledGraph> clique_union_candidates(int max_vertices) {
  std::vector<LabeledGraph> out;
  for (int n = 1; n <= max_vertices; ++n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    integer_partitions(n, n, cur, parts);
    for (const auto& p : parts)
      out.push_back({"complement(clique_union:" + join(p) + ")", complement(clique_union(p))});
  }
  return out;
}

std::vector<LabeledGraph> complete_candidates(int max_vertices) {
  std::vector<LabeledGraph> out;
  for (int n = 1; n <= max_vertices; ++n)
    out.push_back({"complete:" + std::to_string(n), complete_graph(n)});
  return out;
}

std::vector<LabeledGraph> random_candidates(int max_vertices, int count, unsigned long seed) {
  std::vector<LabeledGraph> out;
  if (max_vertices < 2) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, max_vertices);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < count; ++k) {
    const int n = size(rng);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    out.push_back({"random:" + std::to_string(seed) + ":" + std::to_string(k), Graph(n, edges)});
  }
  return out;
}

NonmonotoneResult search_nonmonotone(std::vector<LabeledGraph> candidates,
                                     const NonmonotoneOptions& opt, const SolverConfig& cfg) {
  if (opt.max_vertices < 1 || opt.max_vertices > 9)
    throw std::invalid_argument("max vertices must lie in [1, 9]");
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.graph.num_vertices() < b.graph.num_vertices();
  });

  NonmonotoneResult result;
  std::map<std::pair<int, std::vector<Edge>>, double> cache;
  auto value = [&](const Graph& g) {
    const auto key = std::make_pair(g.num_vertices(), g.edges());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ++result.solves;
    const double v = eval_bound(BoundKind::theta_hat, g, cfg).value;
    cache.emplace(key, v);
    return v;
  };

  for (const auto& cand : candidates) {
    const Graph& g = cand.graph;
    const int n = g.num_vertices();
    if (n > opt.max_vertices || n < 2) continue;
    ++result.graphs_examined;
    const double parent = value(g);
    for (int k = 1; k < n; ++k) {
      std::vector<int> subset(k);
      for (int i = 0; i < k; ++i) subset[i] = i;
      while (true) {
        const Graph h = induced_subgraph(g, subset);
        if (!opt.connected_only || count_components(h) == 1) {
          ++result.subgraphs_examined;
          const double sub = value(h);
          if (sub > parent + opt.margin) {
            result.witness = NonmonotoneWitness{cand.label, g, subset, h, parent, sub};
            return result;
          }
        }
        int i = k - 1;
        while (i >= 0 && subset[i] == n - k + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      }
    }
  }
  return result;
}

nlohmann::json to_json(const NonmonotoneResult& r) {
  nlohmann::json j = {{"found", r.witness.has_value()},
                      {"graphs_examined", r.graphs_examined},
                      {"subgraphs_examined", r.subgraphs_examined},
                      {"solves", r.solves}};
  if (r.witness) {
    const auto& w = *r.witness;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : w.subgraph.edges()) edges.push_back({a + 1, b + 1});
    j["witness"] = {{"parent", w.parent_label},
                    {"parent_n", w.parent.num_vertices()},
                    {"parent_m", w.parent.num_edges()},
                    {"parent_theta_hat", w.parent_value},
                    {"subset", vertex_list(w.subset)},
                    {"subgraph_edges", edges},
                    {"subgraph_theta_hat", w.subgraph_value}};
  }
  return j;
}

ExactReport exact_report(const Graph& g, const EnumerationGuards& guards) {
  ExactReport r;
  r.n = g.num_vertices();
  r.m = g.num_edges();
  r.values.chi = chi_exact(g, guards.chromatic);
  r.values.omega = omega_exact(g, guards.stable_sets);
  r.values.alpha = alpha_exact(g, guards.stable_sets);
  if (r.n <= guards.partitions) r.projection = chi_via_projection(g, guards.partitions);
  return r;
}

nlohmann::json to_json(const ExactReport& r) {
  nlohmann::json j = {{"tool", "ptheta"},
                      {"version", tool_version},
                      {"graph", {{"n", r.n}, {"m", r.m}}},
                      {"chi", r.values.chi.value},
                      {"omega", r.values.omega.value},
                      {"alpha", r.values.alpha.value},
                      {"colouring", to_json(r.values.chi.witness)},
                      {"clique", vertex_list(r.values.omega.witness)},
                      {"stable_set", vertex_list(r.values.alpha.witness)}};
  if (r.projection)
    j["projection"] = {{"chi", r.projection->value},
                       {"colouring", to_json(r.projection->witness)},
                       {"partitions_checked", r.projection->partitions_checked},
                       {"agrees", r.projection->value == r.values.chi.value}};
  return j;
}

}  // namespace ptheta
