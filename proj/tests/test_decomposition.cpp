#include <doctest.h>

#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "wheelhom/decomposition.hpp"
#include "wheelhom/treedec.hpp"

using namespace wh;

namespace {

ITTEInstance plain(const Graph& g) {
    ITTEInstance i;
    i.g = g;
    return i;
}

bool module_by_definition(const Graph& g, const std::vector<int>& m) {
    auto a = oracle::adjacency(g);
    std::vector<char> in(g.n(), 0);
    for (int v : m) in[v] = 1;
    for (int x = 0; x < g.n(); ++x) {
        if (in[x]) continue;
        int hits = 0;
        for (int v : m) hits += a[x][v];
        if (hits != 0 && hits != int(m.size())) return false;
    }
    return true;
}

// no module other than singletons and V
bool prime_by_definition(const Graph& g) {
    int n = g.n();
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        std::vector<int> m;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) m.push_back(v);
        if (m.size() >= 2 && module_by_definition(g, m)) return false;
    }
    return true;
}

bool is_clique(const Graph& g, const std::vector<int>& c) {
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = i + 1; j < c.size(); ++j)
            if (!g.adjacent(c[i], c[j])) return false;
    return true;
}

// some clique whose removal disconnects g
bool has_clique_cutset(const Graph& g) {
    int n = g.n();
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> c;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) c.push_back(v);
        if (int(c.size()) >= n - 1 || !is_clique(g, c)) continue;
        if (!is_connected(remove_vertices(g, c).g)) return true;
    }
    return false;
}

// substitute a small random graph for every vertex of a random base graph
Graph blow_up(std::mt19937_64& rng, int base_n, double p) {
    Graph base = oracle::random_graph(base_n, p, rng);
    std::vector<std::vector<int>> part;
    EdgeList e;
    int n = 0;
    for (int i = 0; i < base_n; ++i) {
        int s = 1 + int(rng() % 3);
        std::vector<int> vs;
        for (int j = 0; j < s; ++j) vs.push_back(n++);
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b)
                if (rng() % 2) e.emplace_back(vs[a], vs[b]);
        part.push_back(vs);
    }
    for (auto [i, j] : base.edges())
        for (int a : part[i])
            for (int b : part[j]) e.emplace_back(a, b);
    return build_graph(n, e);
}

// elimination orders, all of them
int brute_treewidth(const Graph& g) {
    int n = g.n();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    int best = n;
    do {
        auto a = oracle::adjacency(g);
        std::vector<char> gone(n, 0);
        int w = 0;
        for (int v : p) {
            std::vector<int> nb;
            for (int u = 0; u < n; ++u)
                if (!gone[u] && u != v && a[v][u]) nb.push_back(u);
            w = std::max(w, int(nb.size()));
            for (int x : nb)
                for (int y : nb)
                    if (x != y) a[x][y] = 1;
            gone[v] = 1;
        }
        best = std::min(best, w);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

std::optional<ITTESolution> oracle_atoms(const ITTEInstance& i) { return solve_itte_oracle(i); }

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("modular_partition examples") {
    auto p4 = modular_partition(path_graph(4));
    CHECK(p4.blocks.size() == 4);
    CHECK(p4.quotient == path_graph(4));
    CHECK(prime_by_definition(path_graph(4)));

    auto c4 = modular_partition(cycle_graph(4));
    CHECK(c4.blocks == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
    CHECK(c4.quotient == complete_graph(2));
    CHECK(c4.clique_quotient);

    auto k3 = modular_partition(complete_graph(3));
    CHECK(k3.blocks.size() == 3);
    CHECK(k3.quotient == complete_graph(3));
    CHECK(k3.clique_quotient);

    CHECK_THROWS_AS(modular_partition(disjoint_union(Graph(1), Graph(1))), GraphError);
    CHECK(is_module(cycle_graph(4), {0, 2}));
    CHECK_FALSE(is_module(cycle_graph(4), {0, 1}));
}

TEST_CASE("modular_partition against the definition") {
    std::mt19937_64 rng(51);
    for (int it = 0; it < 300; ++it) {
        Graph g = it % 2 ? blow_up(rng, 3 + int(rng() % 3), 0.5) : oracle::random_graph(3 + int(rng() % 7), 0.45, rng);
        if (!is_connected(g) || g.n() > 12) continue;
        auto mp = modular_partition(g);
        std::vector<int> seen(g.n(), 0);
        for (auto& b : mp.blocks) {
            CHECK(module_by_definition(g, b));
            CHECK(is_module(g, b) == true);
            for (int v : b) ++seen[v];
        }
        for (int c : seen) CHECK(c == 1);
        bool co_conn = is_connected(complement(g));
        CHECK(mp.clique_quotient == !co_conn);
        if (!co_conn) {
            CHECK(mp.quotient == complete_graph(int(mp.blocks.size())));
        } else {
            CHECK(mp.blocks.size() >= 4);
            CHECK(prime_by_definition(mp.quotient));
        }
    }
}

TEST_CASE("quotient_itte examples") {
    ITTEInstance p4 = plain(path_graph(4));
    p4.forced_in = {1};
    auto q = quotient_itte(p4, modular_partition(p4.g));
    REQUIRE(q);
    CHECK(q->inst.g == p4.g);
    CHECK(q->inst.forced_in == std::vector<int>{1});

    // C5 with vertex 0 duplicated as a false twin
    Graph c5d = build_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 1}, {5, 4}});
    auto mp = modular_partition(c5d);
    CHECK(mp.blocks.size() == 5);
    auto qd = quotient_itte(plain(c5d), mp);
    REQUIRE(qd);
    CHECK(isomorphic(qd->inst.g, cycle_graph(5)));
    CHECK(oracle::itte_yes(plain(c5d)));
    CHECK(oracle::itte_yes(qd->inst));

    // W5 rim is a non-bipartite module; a pendant path keeps the quotient prime
    Graph t = build_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 0}, {5, 1}, {5, 2}, {5, 3}, {5, 4}, {5, 6}, {6, 7}});
    ITTEInstance ti = plain(t);
    ti.forced_in = {0};
    auto tmp = modular_partition(t);
    REQUIRE(tmp.blocks.size() == 4);
    CHECK(tmp.blocks[0] == std::vector<int>{0, 1, 2, 3, 4});
    CHECK_FALSE(quotient_itte(ti, tmp));
    CHECK_FALSE(oracle::itte_yes(ti));
    auto tq = quotient_itte(plain(t), tmp);
    REQUIRE(tq);
    CHECK(tq->mp.types[0] == ModuleType::Type3);
    CHECK(tq->inst.forced_in == std::vector<int>{1});
    ITTEInstance ty = plain(t);
    ty.forced_out = {3};
    CHECK_THROWS_AS(quotient_itte(ty, tmp), std::invalid_argument);
}

TEST_CASE("quotient_itte keeps the answer") {
    std::mt19937_64 rng(52);
    int yes = 0, none = 0;
    for (int it = 0; it < 1500; ++it) {
        Graph g = blow_up(rng, 2 + int(rng() % 4), 0.55);
        if (!is_connected(g) || g.n() > 13 || oracle::has_induced(g, complete_graph(4))) continue;
        ITTEInstance inst = oracle::random_constraints(g, rng, 0.1, 0.0, 0.15);
        bool truth = oracle::itte_yes(inst);
        auto q = quotient_itte(inst, modular_partition(g));
        bool got = q && oracle::itte_yes(q->inst);
        REQUIRE(got == truth);
        if (!q) ++none;
        if (!got) continue;
        ++yes;
        auto xq = solve_itte_oracle(q->inst);
        REQUIRE(xq);
        CHECK(oracle::itte_ok(inst, lift_quotient(*q, *xq)));
    }
    CHECK(yes > 100);
    CHECK(none > 2);
}

TEST_CASE("clique_cutset_partition examples") {
    auto p3 = clique_cutset_partition(path_graph(3));
    REQUIRE(p3);
    CHECK(p3->c == std::vector<int>{1});
    CHECK_FALSE(clique_cutset_partition(cycle_graph(4)));
    Graph bowtie = build_graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
    auto b = clique_cutset_partition(bowtie);
    REQUIRE(b);
    // smallest side first: {1} behind the edge 02
    CHECK(b->a == std::vector<int>{1});
    CHECK(b->c == std::vector<int>{0, 2});
    CHECK(b->b == std::vector<int>{3, 4});
    CHECK_FALSE(clique_cutset_partition(complete_graph(5)));
}

TEST_CASE("clique_cutset_partition against brute force") {
    std::mt19937_64 rng(53);
    int atoms = 0, split = 0;
    for (int it = 0; it < 400; ++it) {
        Graph g = oracle::random_graph(3 + int(rng() % 7), 0.3 + 0.4 * double(rng() % 10) / 10.0, rng);
        if (!is_connected(g)) continue;
        auto p = clique_cutset_partition(g);
        REQUIRE(bool(p) == has_clique_cutset(g));
        if (!p) {
            ++atoms;
            continue;
        }
        ++split;
        CHECK(is_clique(g, p->c));
        CHECK_FALSE(p->a.empty());
        CHECK_FALSE(p->b.empty());
        CHECK(p->a.size() + p->b.size() + p->c.size() == std::size_t(g.n()));
        for (int u : p->a)
            for (int v : p->b) CHECK_FALSE(g.adjacent(u, v));
        std::vector<int> ac = p->a;
        ac.insert(ac.end(), p->c.begin(), p->c.end());
        CHECK_FALSE(has_clique_cutset(induced_subgraph(g, ac).g));
    }
    CHECK(atoms > 20);
    CHECK(split > 20);
}

TEST_CASE("solve_itte_atoms examples") {
    int calls = 0;
    AtomSolver counting = [&](const ITTEInstance& i) {
        ++calls;
        return solve_itte_oracle(i);
    };
    auto c = solve_itte_atoms(plain(cycle_graph(5)), counting);
    CHECK(c);
    CHECK(calls == 1);

    Graph kp = build_graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
    CHECK_FALSE(oracle::itte_yes(plain(kp)));
    CHECK_FALSE(solve_itte_atoms(plain(kp), oracle_atoms));

    Graph bowtie = build_graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
    auto x = solve_itte_atoms(plain(bowtie), oracle_atoms);
    REQUIRE(x);
    CHECK(*x == std::vector<int>{2});
}

TEST_CASE("solve_itte_atoms with the oracle on atoms, n <= 9") {
    std::mt19937_64 rng(54);
    int yes = 0;
    for (int it = 0; it < 800; ++it) {
        int n = 2 + int(rng() % 8);
        Graph g = oracle::random_graph(n, 0.25 + 0.4 * double(rng() % 10) / 10.0, rng);
        ITTEInstance inst = oracle::random_constraints(g, rng);
        bool truth = oracle::itte_yes(inst);
        SolveStats st;
        auto x = solve_itte_atoms(inst, oracle_atoms, &st);
        REQUIRE(bool(x) == truth);
        if (x) {
            CHECK(oracle::itte_ok(inst, *x));
            ++yes;
        }
    }
    CHECK(yes > 100);
}

TEST_CASE("tree_decomposition examples") {
    Graph tree = build_graph(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    auto t = tree_decomposition(tree, 1);
    REQUIRE(t);
    CHECK(t->width() == 1);
    CHECK(validate_tree_decomposition(tree, *t).empty());
    auto c = tree_decomposition(cycle_graph(5), 2);
    REQUIRE(c);
    CHECK(c->width() == 2);
    CHECK_FALSE(tree_decomposition(complete_graph(5), 3));
    CHECK(exact_treewidth(complete_graph(6)) == 5);

    TreeDecomposition bad;
    bad.bags = {{0, 1}, {2, 3}};
    bad.tree = {{0, 1}};
    CHECK_FALSE(validate_tree_decomposition(cycle_graph(4), bad).empty());
    TreeDecomposition split;
    split.bags = {{0, 1, 2}, {1, 3}, {0, 2, 3}};
    split.tree = {{0, 1}, {1, 2}};
    CHECK_FALSE(validate_tree_decomposition(cycle_graph(4), split).empty());
}

TEST_CASE("exact treewidth against all elimination orders") {
    std::mt19937_64 rng(55);
    for (int it = 0; it < 120; ++it) {
        Graph g = oracle::random_graph(3 + int(rng() % 5), 0.5, rng);
        int tw = brute_treewidth(g);
        std::vector<int> order;
        CHECK(exact_treewidth(g, &order) == tw);
        auto td = decomposition_from_order(g, order);
        CHECK(validate_tree_decomposition(g, td).empty());
        CHECK(td.width() == tw);
        auto h = heuristic_decomposition(g);
        CHECK(validate_tree_decomposition(g, h).empty());
        CHECK(h.width() >= tw);
        auto b = tree_decomposition(g, tw);
        REQUIRE(b);
        CHECK(b->width() <= tw);
        if (tw > 0) CHECK_FALSE(tree_decomposition(g, tw - 1));
    }
}

TEST_CASE("nice decompositions") {
    std::mt19937_64 rng(56);
    for (int it = 0; it < 50; ++it) {
        Graph g = oracle::random_graph(10, 0.3, rng);
        auto nice = make_nice(heuristic_decomposition(g), g.n());
        CHECK(nice.nodes[nice.root()].bag.empty());
        std::vector<int> forgotten(g.n(), 0);
        for (int i = 0; i <= nice.root(); ++i) {
            auto& nd = nice.nodes[i];
            for (int k : nd.kids) CHECK(k < i);
            if (nd.kind == NiceNode::Forget) ++forgotten[nd.v];
            if (nd.kind == NiceNode::Join) {
                REQUIRE(nd.kids.size() == 2);
                CHECK(nice.nodes[nd.kids[0]].bag == nd.bag);
                CHECK(nice.nodes[nd.kids[1]].bag == nd.bag);
            }
        }
        for (int f : forgotten) CHECK(f == 1);
    }
}

TEST_CASE("solve_itte_treewidth") {
    auto c = solve_itte_treewidth(plain(cycle_graph(5)), *tree_decomposition(cycle_graph(5), 2));
    REQUIRE(c);
    CHECK(c->empty());
    CHECK_FALSE(solve_itte_treewidth(plain(complete_graph(4)), *tree_decomposition(complete_graph(4), 3)));
    TreeDecomposition bad;
    bad.bags = {{0, 1}};
    CHECK_THROWS_AS(solve_itte_treewidth(plain(cycle_graph(4)), bad), std::invalid_argument);

    std::mt19937_64 rng(57);
    int yes = 0;
    for (int it = 0; it < 600; ++it) {
        int n = 2 + int(rng() % 13);
        Graph g = oracle::random_graph(n, 0.2 + 0.4 * double(rng() % 10) / 10.0, rng);
        ITTEInstance inst = oracle::random_constraints(g, rng);
        bool truth = oracle::itte_yes(inst);
        auto x = solve_itte_treewidth(inst, heuristic_decomposition(g));
        REQUIRE(bool(x) == truth);
        if (x) {
            CHECK(verify_itte(inst, *x));
            CHECK(oracle::itte_ok(inst, *x));
            ++yes;
        }
    }
    CHECK(yes > 100);
}

TEST_CASE("tree decomposition text format") {
    auto td = heuristic_decomposition(cycle_graph(6));
    std::ostringstream out;
    write_tree_decomposition(out, td);
    std::istringstream in(out.str());
    auto back = read_tree_decomposition(in);
    CHECK(back.bags == td.bags);
    CHECK(back.tree == td.tree);
    CHECK(out.str().substr(0, 2) == "b:");
    std::istringstream bad("b: 0 1\nt: 0 x\n");
    CHECK_THROWS_WITH(read_tree_decomposition(bad), doctest::Contains("line 2"));
}

TEST_CASE("solve_itte_s211 examples") {
    auto c = solve_itte_s211(plain(cycle_graph(5)));
    CHECK(c.yes());
    CHECK_FALSE(solve_itte_s211(plain(complete_graph(4))).yes());
    CHECK_THROWS_AS(solve_itte_s211(plain(pattern_graph(PatternId::named(Pattern::S211)))), PreconditionError);
    ITTEInstance allout = plain(cycle_graph(5));
    allout.forced_out = {0, 1, 2, 3, 4};
    CHECK(solve_itte_s211(allout).yes());
    ITTEInstance k3 = plain(complete_graph(3));
    k3.forced_out = {0, 1, 2};
    CHECK_FALSE(solve_itte_s211(k3).yes());
}

TEST_CASE("solve_itte_s211 on every connected fork-free graph up to 7 vertices") {
    std::mt19937_64 rng(58);
    Graph fork = pattern_graph(PatternId::named(Pattern::S211));
    int total = 0, yes = 0;
    for (int n = 1; n <= 7; ++n)
        for (const Graph& g : enumerate_connected_graphs(n)) {
            if (oracle::has_induced(g, fork)) continue;
            for (int rep = 0; rep < 6; ++rep) {
                ITTEInstance inst = oracle::random_constraints(g, rng);
                bool truth = oracle::itte_yes(inst);
                auto r = solve_itte_s211(inst, rep % 2 ? 3 : 1);
                REQUIRE(r.yes() == truth);
                if (r.yes()) {
                    CHECK(oracle::itte_ok(inst, *r.solution));
                    ++yes;
                }
                CHECK(r.stats.claw_violations == 0);
                ++total;
            }
        }
    CHECK(total > 1000);
    CHECK(yes > 200);
}

TEST_CASE("solve_itte_s211 on random fork-free graphs up to 14 vertices") {
    std::mt19937_64 rng(59);
    int yes = 0;
    for (int it = 0; it < 150; ++it) {
        int n = 8 + int(rng() % 7);
        Graph g = random_fork_free(n, 0.2 + 0.5 * double(rng() % 10) / 10.0, rng);
        REQUIRE_FALSE(oracle::has_induced(g, pattern_graph(PatternId::named(Pattern::S211))));
        ITTEInstance inst = oracle::random_constraints(g, rng, 0.05, 0.1, 0.1);
        bool truth = oracle::itte_yes(inst);
        auto r = solve_itte_s211(inst);
        REQUIRE(r.yes() == truth);
        if (r.yes()) {
            CHECK(oracle::itte_ok(inst, *r.solution));
            ++yes;
        }
    }
    CHECK(yes > 20);
}

TEST_CASE("prime pieces of G - N[v] are claw-free for prime fork-free G, n <= 8") {
    Graph fork = pattern_graph(PatternId::named(Pattern::S211));
    Graph claw = pattern_graph(PatternId::named(Pattern::Claw));
    int primes = 0, pieces = 0;
    for (int n = 4; n <= 8; ++n)
        for (const Graph& g : enumerate_connected_graphs(n)) {
            if (!is_connected(complement(g)) || !is_free_of(g, Pattern::S211)) continue;
            if (modular_partition(g).blocks.size() != std::size_t(n)) continue;
            REQUIRE_FALSE(oracle::has_induced(g, fork));
            ++primes;
            for (int v = 0; v < n; ++v) {
                std::vector<int> closed = g.nbrs(v);
                closed.push_back(v);
                Graph rest = remove_vertices(g, closed).g;
                for (const auto& comp : connected_components(rest)) {
                    Graph h = induced_subgraph(rest, comp).g;
                    if (h.n() < 4) continue;
                    auto mp = modular_partition(h);
                    ++pieces;
                    REQUIRE_FALSE(oracle::has_induced(mp.quotient, claw));
                }
            }
        }
    CHECK(primes > 100);
    CHECK(pieces > 100);
}

}  // TEST_SUITE
