#include "ptheta/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace ptheta;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("truncated display") {
  CHECK(format_truncated(29.0 / 9) == "3.222");
  CHECK(format_truncated(33.0 / 9) == "3.666");
  CHECK(format_truncated(1.0) == "1.000");
  CHECK(format_truncated(0.9999999999) == "1.000");
  CHECK(format_truncated(2.9999996) == "3.000");
  CHECK(format_truncated(41.0 / 9) == "4.555");
  CHECK(format_truncated(17.0 / 3) == "5.666");
  CHECK(truncate_decimals(3.96796966) == doctest::Approx(3.967));
}

TEST_CASE("rounded display") {
  CHECK(format_rounded(33.0 / 9) == "3.667");
  CHECK(format_rounded(3.96796966) == "3.968");
  CHECK(format_rounded(1.77179391) == "1.772");
  CHECK(format_rounded(1.0) == "1.000");
}

TEST_CASE("table display") {
  CHECK(format_table(3.0000000001) == "3");
  CHECK(format_table(7.9999999) == "8");
  CHECK(format_table(29.0 / 9) == "3.222");
  CHECK(format_table(33.0 / 9) == "3.666");
  CHECK(format_table(33.0 / 9, true) == "3.667");
  CHECK(format_table(4.0, true) == "4");
}

TEST_CASE("table parameters") {
  CHECK(table1_parameters() == std::vector<std::vector<int>>{
                                   {3, 3, 3}, {4, 3, 2}, {4, 4, 1}, {5, 2, 2}, {5, 3, 1}, {6, 2, 1}, {7, 1, 1}});
  CHECK(table2_parameters() ==
        std::vector<std::vector<int>>{{2, 7}, {3, 6}, {4, 5}, {5, 4}, {6, 3}, {7, 2}, {8, 1}});
}

TEST_CASE("table rows") {
  const TableRow r = evaluate_table1_row({4, 3, 2}, {});
  REQUIRE(r.ok);
  CHECK(format_table(r.theta_hat) == "3.222");
  CHECK(std::abs(r.theta_hat_prime - 3.968) <= 2e-3);
  CHECK(format_table(r.theta) == "4");
  CHECK(r.worst_gap <= 1e-7);
  CHECK(r.worst_feasibility <= 1e-7);
  const TableRow t = evaluate_table2_row({4, 5}, {});
  REQUIRE(t.ok);
  CHECK(format_table(t.theta_hat) == "2.333");
  CHECK(format_table(t.theta_hat_prime, true) == "3.851");
  CHECK(format_table(t.theta) == "4");
}

TEST_CASE("table CSV layout") {
  TableRow row;
  row.params = {3, 3, 3};
  row.theta_hat = row.theta_hat_prime = row.theta = 3.0000000001;
  row.ok = true;
  TableRow failed;
  failed.params = {4, 3, 2};
  failed.error = "solver failure";
  std::ostringstream out;
  write_table_csv(out, {"n1", "n2", "n3"}, {row, failed});
  const auto l = lines(out.str());
  REQUIRE(l.size() == 3);
  CHECK(l[0] ==
        "n1,n2,n3,theta_hat,theta_hat_prime,theta,theta_hat_3dp,theta_hat_prime_3dp,theta_3dp,"
        "theta_hat_3dp_rounded,theta_hat_prime_3dp_rounded,theta_3dp_rounded,status");
  CHECK(l[1].rfind("3,3,3,", 0) == 0);
  CHECK(l[1].ends_with(",3,3,3,3,3,3,ok"));
  CHECK(l[2].rfind("4,3,2,", 0) == 0);
  CHECK(l[2].ends_with("failed: solver failure"));
}

TEST_CASE("bounds report") {
  const Graph g = clique_union({4, 3, 2});
  const BoundsReport r = compute_bounds_report(g, "clique_union:4,3,2", true,
                                               {BoundKind::theta_hat, BoundKind::theta}, {}, true);
  CHECK(r.n == 9);
  CHECK(r.m == 6 + 3 + 1);
  REQUIRE(r.bounds.size() == 2);
  CHECK(r.bounds[0].bound.kind == BoundKind::theta_hat);
  CHECK(std::abs(r.bounds[0].bound.value - 29.0 / 9) <= 1e-6);
  CHECK(std::abs(r.bounds[1].bound.value - 4) <= 1e-6);
  REQUIRE(r.exact);
  CHECK(r.exact->chi.value == 4);
  CHECK(r.exact->omega.value == 4);
  CHECK(r.exact->alpha.value == 3);

  const auto j = to_json(r);
  CHECK(j["tool"] == "ptheta");
  CHECK(j["version"] == tool_version);
  CHECK(j["evaluated_at"] == "complement");
  CHECK(j["graph"]["n"] == 9);
  CHECK(j["bounds"][0]["name"] == "that");
  CHECK(j["bounds"][0]["display"] == "3.222");
  CHECK(j["bounds"][0]["status"] == "optimal");
  CHECK(j["bounds"][0]["residuals"]["primal"].get<double>() <= 1e-7);
  CHECK(j["bounds"][1]["display"] == "4.000");
  CHECK(j["exact"]["chi"] == 4);
  CHECK(j["exact"]["clique"].size() == 4);
  CHECK(j["exact"]["colouring"].size() == 4);

  std::ostringstream csv;
  write_csv(csv, r);
  const auto l = lines(csv.str());
  REQUIRE(l.size() == 6);
  CHECK(l[5] == "9,10,graph,alpha,3,3,3,exact,,,,");
  CHECK(l[0] ==
        "n,m,evaluated_at,kind,value,display,display_rounded,status,iterations,relative_gap,"
        "primal_residual,dual_residual");
  CHECK(l[1].rfind("9,10,complement,that,", 0) == 0);
  CHECK(l[1].find(",3.222,3.222,optimal,") != std::string::npos);
}

TEST_CASE("bounds of the input graph") {
  const BoundsReport r =
      compute_bounds_report(complete_graph(5), "complete:5", false, {BoundKind::theta_hat}, {}, false);
  CHECK(format_truncated(r.bounds[0].bound.value) == "1.000");
  CHECK_FALSE(r.exact);
  CHECK_FALSE(to_json(r).contains("exact"));
  CHECK(to_json(r)["evaluated_at"] == "graph");
}

TEST_CASE("bounds on the three-vertex example") {
  const Graph g(3, {{0, 2}, {1, 2}});
  const BoundsReport r =
      compute_bounds_report(g, "example", false, {BoundKind::theta, BoundKind::theta_plus}, {}, false);
  CHECK(std::isfinite(r.bounds[0].bound.value));
  CHECK(std::isfinite(r.bounds[1].bound.value));
  CHECK(r.bounds[0].bound.value <= r.bounds[1].bound.value + 1e-5);
}

TEST_CASE("nonmonotone witness in K9 minus an edge") {
  const std::vector<LabeledGraph> cands{{"k9-e", complement(clique_plus_isolated(2, 7))}};
  const NonmonotoneResult r = search_nonmonotone(cands, {}, {});
  REQUIRE(r.witness);
  const auto& w = *r.witness;
  CHECK(w.parent_label == "k9-e");
  CHECK(w.subset == std::vector<int>{0, 1, 2});
  CHECK(w.subgraph.num_vertices() == 3);
  CHECK(w.subgraph.num_edges() == 2);
  CHECK(std::abs(w.subgraph_value - 5.0 / 3) <= 1e-5);
  CHECK(std::abs(w.parent_value - 11.0 / 9) <= 1e-5);
  const auto j = to_json(r);
  CHECK(j["found"] == true);
  CHECK(j["witness"]["subset"] == nlohmann::json::array({1, 2, 3}));
}

TEST_CASE("no witness among small or complete graphs") {
  NonmonotoneOptions small;
  small.max_vertices = 2;
  const NonmonotoneResult a = search_nonmonotone(clique_union_candidates(9), small, {});
  CHECK_FALSE(a.witness);
  CHECK(a.graphs_examined == 2);
  const NonmonotoneResult b = search_nonmonotone(complete_candidates(9), {}, {});
  CHECK_FALSE(b.witness);
  CHECK(b.graphs_examined == 8);
  CHECK(to_json(b)["found"] == false);
  NonmonotoneOptions bad;
  bad.max_vertices = 10;
  CHECK_THROWS_AS(search_nonmonotone({}, bad, {}), std::invalid_argument);
}

TEST_CASE("candidate generators") {
  const auto c = clique_union_candidates(4);
  // partitions of 1..4: 1 + 2 + 3 + 5
  CHECK(c.size() == 11);
  for (std::size_t i = 1; i < c.size(); ++i)
    CHECK(c[i - 1].graph.num_vertices() <= c[i].graph.num_vertices());
  CHECK(c.front().label.rfind("complement(clique_union:", 0) == 0);
  const auto r1 = random_candidates(9, 5, 3), r2 = random_candidates(9, 5, 3);
  REQUIRE(r1.size() == 5);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].graph == r2[i].graph);
    CHECK(r1[i].graph.num_vertices() >= 2);
    CHECK(r1[i].graph.num_vertices() <= 9);
  }
}

TEST_CASE("exact report") {
  const ExactReport e = exact_report(Graph(3, {{0, 2}, {1, 2}}));
  CHECK(e.values.chi.value == 2);
  CHECK(e.values.omega.value == 2);
  CHECK(e.values.alpha.value == 2);
  REQUIRE(e.projection);
  CHECK(e.projection->value == 2);
  const auto j = to_json(e);
  CHECK(j["projection"]["agrees"] == true);
  CHECK(j["colouring"].size() == 2);

  const ExactReport c5 = exact_report(cycle_graph(5));
  CHECK(c5.values.chi.value == 3);
  CHECK(c5.values.omega.value == 2);
  CHECK(c5.values.alpha.value == 2);
  const ExactReport k1 = exact_report(Graph(1));
  CHECK(k1.values.chi.value == 1);
  CHECK(k1.values.omega.value == 1);
  CHECK(k1.values.alpha.value == 1);

  CHECK_FALSE(exact_report(petersen_graph()).projection);
  CHECK_THROWS_AS(exact_report(empty_graph(13)), GuardExceeded);
}

TEST_CASE("partitions print 1-based") {
  CHECK(to_json(Partition{{{0, 2}, {1}}}) == nlohmann::json::parse("[[1,3],[2]]"));
}

}
