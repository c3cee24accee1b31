#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "wheelhom/graph.hpp"

using namespace wh;

namespace {

Graph wheel5() {
    return build_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
}

// smallest adjacency string over all relabellings, computed directly
std::vector<char> brute_canon(const Graph& g) {
    auto a = oracle::adjacency(g);
    std::vector<int> p(g.n());
    std::iota(p.begin(), p.end(), 0);
    std::vector<char> best;
    do {
        std::vector<char> s;
        for (int i = 0; i < g.n(); ++i)
            for (int j = i + 1; j < g.n(); ++j) s.push_back(a[p[i]][p[j]]);
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("build_graph") {
    Graph k3 = build_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(k3.m() == 3);
    CHECK(wheel5().m() == 10);
    CHECK_THROWS_AS(build_graph(2, {{0, 0}}), GraphError);
    CHECK_THROWS_AS(build_graph(2, {{0, 2}}), GraphError);
    Graph dup = build_graph(3, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(dup.m() == 1);
    Graph w = wheel5();
    for (int v = 0; v < 6; ++v) CHECK(std::is_sorted(w.nbrs(v).begin(), w.nbrs(v).end()));
}

TEST_CASE("contains_induced examples") {
    Graph w = wheel5();
    Graph claw = pattern_graph(PatternId::named(Pattern::Claw));
    CHECK(oracle::has_induced(w, claw) == false);
    CHECK_FALSE(contains_induced(w, PatternId::named(Pattern::Claw)));
    CHECK(contains_induced(complete_graph(4), PatternId::named(Pattern::K3)));
    Graph fork = pattern_graph(PatternId::named(Pattern::S211));
    auto wit = contains_induced(fork, PatternId::named(Pattern::S211));
    REQUIRE(wit);
    CHECK(std::set<int>(wit->begin(), wit->end()) == std::set<int>{0, 1, 2, 3, 4});
}

TEST_CASE("named patterns") {
    CHECK(pattern_graph(PatternId::named(Pattern::S211)).n() == 5);
    CHECK(pattern_graph(PatternId::named(Pattern::S333)).n() == 10);
    CHECK(pattern_graph(PatternId::named(Pattern::K14)).m() == 4);
    CHECK(isomorphic(pattern_graph(PatternId::named(Pattern::Claw)), star_graph(3)));
}

TEST_CASE("contains_induced agrees with subset scan on connected graphs up to 7 vertices") {
    std::vector<Graph> pats = {pattern_graph(PatternId::named(Pattern::Claw)), pattern_graph(PatternId::named(Pattern::S211)),
                               complete_graph(3), complete_graph(4), cycle_graph(4), path_graph(4)};
    long long checked = 0;
    for (int n = 1; n <= 7; ++n)
        for (const Graph& g : enumerate_connected_graphs(n))
            for (const Graph& p : pats) {
                auto wit = find_induced(g, p);
                REQUIRE(bool(wit) == oracle::has_induced(g, p));
                if (wit) CHECK(isomorphic(induced_subgraph(g, *wit).g, p));
                ++checked;
            }
    CHECK(checked == 6 * (1 + 1 + 2 + 6 + 21 + 112 + 853));
}

TEST_CASE("contains_induced agrees with subset scan on random graphs of 8 vertices") {
    std::mt19937_64 rng(11);
    std::vector<Graph> pats = {pattern_graph(PatternId::named(Pattern::S211)), pattern_graph(PatternId::named(Pattern::K14))};
    for (int it = 0; it < 300; ++it) {
        Graph g = oracle::random_graph(8, 0.2 + 0.6 * (it % 10) / 10.0, rng);
        for (const Graph& p : pats) CHECK(bool(find_induced(g, p)) == oracle::has_induced(g, p));
    }
}

TEST_CASE("find_induced with fixed vertices") {
    Graph p3 = path_graph(3);
    Graph c5 = cycle_graph(5);
    auto w = find_induced(c5, p3, {{1, 3}});
    REQUIRE(w);
    CHECK((*w)[1] == 3);
    CHECK_FALSE(find_induced(complete_graph(3), p3, {{1, 0}}));
}

TEST_CASE("triangles") {
    auto t = triangles(wheel5());
    std::vector<std::array<int, 3>> expect;
    auto a = oracle::adjacency(wheel5());
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            for (int w = v + 1; w < 6; ++w)
                if (a[u][v] && a[v][w] && a[u][w]) expect.push_back({u, v, w});
    CHECK(t == expect);
    CHECK(t.size() == 5);
    for (auto& x : t) CHECK(x[0] == 0);
    CHECK(triangles(cycle_graph(5)).empty());
    CHECK(triangles(complete_graph(4)).size() == 4);
}

TEST_CASE("girth") {
    CHECK(girth(cycle_graph(5)) == 5);
    CHECK(girth(complete_graph(4)) == 3);
    CHECK_FALSE(girth(path_graph(4)));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        Graph g = oracle::random_graph(9, 0.25, rng);
        int comps = static_cast<int>(connected_components(g).size());
        CHECK(!girth(g).has_value() == (g.m() == g.n() - comps));
    }
}

TEST_CASE("line_graph") {
    auto p3 = line_graph(path_graph(3));
    CHECK(p3.g.n() == 2);
    CHECK(p3.g.m() == 1);
    CHECK(isomorphic(line_graph(complete_graph(3)).g, complete_graph(3)));
    auto lk4 = line_graph(complete_graph(4));
    CHECK(lk4.g.n() == 6);
    CHECK(lk4.g.m() == 12);
    for (int v = 0; v < 6; ++v) CHECK(lk4.g.degree(v) == 4);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            auto [x, y] = lk4.vertex_edge[a];
            auto [z, w] = lk4.vertex_edge[b];
            CHECK(lk4.g.adjacent(a, b) == (x == z || x == w || y == z || y == w));
        }
}

TEST_CASE("line graphs are claw-free") {
    for (int n = 2; n <= 8; ++n)
        for (const Graph& d : enumerate_connected_graphs(n))
            REQUIRE_FALSE(contains_induced(line_graph(d).g, PatternId::named(Pattern::Claw)));
}

TEST_CASE("enumerate_connected_graphs") {
    std::vector<std::size_t> counts = {1, 1, 2, 6, 21, 112};
    for (int n = 1; n <= 6; ++n) CHECK(enumerate_connected_graphs(n).size() == counts[n - 1]);
    auto k3free = enumerate_connected_graphs(4, [](const Graph& g) { return is_free_of(g, Pattern::K3); });
    CHECK(k3free.size() == 3);
    CHECK_THROWS(enumerate_connected_graphs(10));
}

TEST_CASE("enumeration has one graph per class") {
    for (int n = 2; n <= 6; ++n) {
        auto gs = enumerate_connected_graphs(n);
        std::set<std::vector<char>> seen;
        for (auto& g : gs) {
            CHECK(is_connected(g));
            CHECK(seen.insert(brute_canon(g)).second);
        }
        // every connected labelled graph on n <= 5 vertices lands in some class
        if (n <= 5) {
            int pairs = n * (n - 1) / 2;
            std::set<std::vector<char>> all;
            for (int mask = 0; mask < (1 << pairs); ++mask) {
                EdgeList e;
                int b = 0;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v, ++b)
                        if (mask >> b & 1) e.emplace_back(u, v);
                Graph g = build_graph(n, e);
                if (is_connected(g)) all.insert(brute_canon(g));
            }
            CHECK(all == seen);
        }
    }
}

TEST_CASE("canonical form matches isomorphism") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
        Graph a = oracle::random_graph(6, 0.5, rng);
        Graph b = oracle::random_graph(6, 0.5, rng);
        bool iso = brute_canon(a) == brute_canon(b);
        CHECK(isomorphic(a, b) == iso);
        CHECK((canonical_form(a) == canonical_form(b)) == iso);
    }
}

TEST_CASE("longest induced cycle") {
    CHECK(longest_induced_cycle(cycle_graph(9)) == 9);
    CHECK(longest_induced_cycle(complete_graph(4)) == 3);
    CHECK_FALSE(longest_induced_cycle(path_graph(5)));
    Graph theta = build_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
    CHECK(longest_induced_cycle(theta) == 4);
}

TEST_CASE("graph text format") {
    Graph g = wheel5();
    std::string s = format_graph(g);
    CHECK(format_graph(parse_graph(s)) == s);
    CHECK(s.substr(0, 5) == "6 10\n");
    CHECK_THROWS_WITH_AS(parse_graph("3 2\n0 1\n1 5\n"), doctest::Contains("line 3"), GraphError);
    CHECK_THROWS_WITH_AS(parse_graph("3 2\n0 1\n"), doctest::Contains("line"), GraphError);
    CHECK_THROWS_AS(parse_graph("3 x\n"), GraphError);
    CHECK_THROWS_AS(parse_graph("2 1\n1 1\n"), GraphError);
}

TEST_CASE("induced subgraph bookkeeping") {
    Graph g = wheel5();
    Induced r = remove_vertices(g, {0, 3});
    CHECK(r.g.n() == 4);
    CHECK(r.old_of_new == std::vector<int>{1, 2, 4, 5});
    CHECK(r.new_of_old[3] == -1);
    CHECK(r.g.m() == 3);  // rim path 4-5-1-2
    CHECK(complement(complement(g)) == g);
    CHECK(disjoint_union(g, g).m() == 20);
}

}  // TEST_SUITE
