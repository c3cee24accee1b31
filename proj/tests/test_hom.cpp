#include <doctest.h>

#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "wheelhom/hom.hpp"

using namespace wh;

TEST_SUITE("hom") {

TEST_CASE("make_target") {
    Target w5 = make_target(TargetKind::Wheel, 5);
    CHECK(w5.graph.n() == 6);
    CHECK(w5.graph.m() == 10);
    CHECK(w5.graph.degree(0) == 5);
    for (int i = 1; i <= 5; ++i) CHECK(w5.graph.adjacent(i, i % 5 + 1));
    Target c5 = make_target(TargetKind::Cycle, 5);
    CHECK(c5.domain == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(isomorphic(induced_subgraph(c5.graph, c5.domain).g, cycle_graph(5)));
    CHECK_THROWS(make_target(TargetKind::Wheel, 4));
    CHECK_THROWS(make_target(TargetKind::Wheel, 3));
    CHECK_THROWS(make_target(TargetKind::Cycle, 2));
}

TEST_CASE("solve_extension examples") {
    Target w5 = make_target(TargetKind::Wheel, 5);
    Target c5 = make_target(TargetKind::Cycle, 5);
    auto m = solve_extension(cycle_graph(5), c5);
    REQUIRE(m);
    CHECK(verify_map(cycle_graph(5), c5, *m));
    CHECK_FALSE(solve_extension(complete_graph(4), w5));
    // K3 with a -> 1, b -> 2: the only common neighbour of 1 and 2 is the hub
    std::vector<int> first;
    CHECK(oracle::count_maps(complete_graph(3), oracle::wheel_matrix(5), oracle::range(0, 5), {{0, 1}, {1, 2}}, &first) == 1);
    CHECK(first[2] == 0);
    auto k3 = solve_extension(complete_graph(3), w5, {{0, 1}, {1, 2}});
    REQUIRE(k3);
    CHECK((*k3)[2] == 0);
}

TEST_CASE("count_homs") {
    Target w5 = make_target(TargetKind::Wheel, 5);
    Target c5 = make_target(TargetKind::Cycle, 5);
    CHECK(oracle::count_maps(complete_graph(3), oracle::wheel_matrix(5), oracle::range(0, 5)) == 30);
    CHECK(count_homs(complete_graph(3), w5) == 30);
    auto cm = oracle::wheel_matrix(5);
    cm[0].assign(6, 0);
    for (auto& row : cm) row[0] = 0;
    CHECK(oracle::count_maps(cycle_graph(5), cm, oracle::range(1, 5)) == 10);
    CHECK(count_homs(cycle_graph(5), c5) == 10);
    CHECK(count_homs(Graph(1), w5) == 6);
}

TEST_CASE("verify_map") {
    Target w5 = make_target(TargetKind::Wheel, 5);
    Target c5 = make_target(TargetKind::Cycle, 5);
    CHECK_FALSE(verify_map(cycle_graph(5), w5, FullMap(5, 1)));
    CHECK(verify_map(cycle_graph(5), c5, {1, 2, 3, 4, 5}));
    CHECK_FALSE(verify_map(cycle_graph(5), c5, {1, 2, 3, 4, 5}, {{0, 2}}));
    CHECK_FALSE(verify_map(cycle_graph(5), c5, {0, 1, 2, 3, 4}));  // 0 is not in the cycle domain
    Graph w = make_target(TargetKind::Wheel, 5).graph;
    auto m = solve_extension(w, w5);
    REQUIRE(m);
    CHECK(verify_map(w, w5, *m));
    CHECK(wheel_structure_holds(w, w5, *m));
}

TEST_CASE("solve_extension and count_homs against enumeration, n <= 6") {
    std::vector<std::pair<Target, std::vector<std::vector<char>>>> ts;
    for (int k : {5, 7}) ts.push_back({make_target(TargetKind::Wheel, k), oracle::wheel_matrix(k)});
    auto c5m = oracle::wheel_matrix(5);
    c5m[0].assign(6, 0);
    for (auto& row : c5m) row[0] = 0;
    ts.push_back({make_target(TargetKind::Cycle, 5), c5m});
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : enumerate_connected_graphs(n))
            for (auto& [t, h] : ts) {
                auto dom = t.domain;
                auto cnt = oracle::count_maps(g, h, dom);
                REQUIRE(count_homs(g, t) == cnt);
                auto m = solve_extension(g, t);
                REQUIRE(bool(m) == (cnt > 0));
                if (m && t.kind == TargetKind::Wheel) CHECK(wheel_structure_holds(g, t, *m));
                PartialMap pre;
                std::uniform_int_distribution<int> col(0, int(dom.size()) - 1);
                for (int v = 0; v < n; ++v)
                    if (rng() % 3 == 0) pre[v] = dom[col(rng)];
                auto pm = solve_extension(g, t, pre);
                REQUIRE(bool(pm) == oracle::has_map(g, h, dom, {pre.begin(), pre.end()}));
                if (pm) CHECK(verify_map(g, t, *pm, pre));
            }
}

TEST_CASE("large inputs fall back to the decomposition DP") {
    // a long ladder of triangles; search budget of 1 forces the DP
    EdgeList e;
    int n = 60;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    for (int i = 0; i + 2 < n; i += 2) e.emplace_back(i, i + 2);
    Graph g = build_graph(n, e);
    HomStats st;
    HomOptions opt;
    opt.search_budget = 1;
    auto m = solve_extension(g, make_target(TargetKind::Wheel, 5), {}, &st, opt);
    REQUIRE(m);
    CHECK(st.used_dp);
    CHECK(verify_map(g, make_target(TargetKind::Wheel, 5), *m));
    Graph bad = disjoint_union(g, complete_graph(4));
    CHECK_FALSE(solve_extension(bad, make_target(TargetKind::Wheel, 5), {}, nullptr, opt));
}

TEST_CASE("minimize_obstruction examples") {
    Target w5 = make_target(TargetKind::Wheel, 5);
    Target w7 = make_target(TargetKind::Wheel, 7);
    auto z = minimize_obstruction(complete_graph(5), w5);
    CHECK(isomorphic(z.g, complete_graph(4)));
    CHECK(z.kept == std::vector<int>{1, 2, 3, 4});
    CHECK(minimize_obstruction(complete_graph(4), w7).kept == std::vector<int>{0, 1, 2, 3});
    Graph u = disjoint_union(complete_graph(4), cycle_graph(5));
    auto z2 = minimize_obstruction(u, w5);
    CHECK(z2.kept == std::vector<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(minimize_obstruction(cycle_graph(5), w5), std::invalid_argument);
    CHECK(audit_minimality(z.g, w5).ok());
    CHECK_FALSE(audit_minimality(complete_graph(5), w5).ok());
}

TEST_CASE("minimize_obstruction matches one-at-a-time deletion") {
    std::mt19937_64 rng(8);
    int tested = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 6 + int(rng() % 5);
        int k = rng() % 2 ? 5 : 7;
        Target t = make_target(TargetKind::Wheel, k);
        auto h = oracle::wheel_matrix(k);
        auto dom = oracle::range(0, k);
        Graph g = oracle::random_graph(n, 0.55, rng);
        if (oracle::has_map(g, h, dom)) continue;
        ++tested;
        // restart from the lowest index after each deletion
        std::vector<int> keep(n);
        std::iota(keep.begin(), keep.end(), 0);
        for (bool again = true; again;) {
            again = false;
            for (std::size_t i = 0; i < keep.size(); ++i) {
                auto k2 = keep;
                k2.erase(k2.begin() + long(i));
                if (!oracle::has_map(induced_subgraph(g, k2).g, h, dom)) {
                    keep = k2;
                    again = true;
                    break;
                }
            }
        }
        auto z = minimize_obstruction(g, t);
        CHECK(z.kept == keep);
    }
    CHECK(tested > 50);
}

TEST_CASE("partial map text format") {
    std::istringstream in("0 -> 3\n# note\n\n4 -> 0\n");
    PartialMap m = read_partial_map(in);
    CHECK(m == PartialMap{{0, 3}, {4, 0}});
    std::ostringstream out;
    write_partial_map(out, m);
    CHECK(out.str() == "0 -> 3\n4 -> 0\n");
    std::istringstream bad("0 -> 1\n1 => 2\n");
    CHECK_THROWS_WITH(read_partial_map(bad), doctest::Contains("line 2"));
    std::istringstream twice("0 -> 1\n0 -> 2\n");
    CHECK_THROWS(read_partial_map(twice));
}

}  // TEST_SUITE
