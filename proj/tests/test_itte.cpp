#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "wheelhom/itte.hpp"

using namespace wh;

namespace {

ITTEInstance plain(const Graph& g) {
    ITTEInstance i;
    i.g = g;
    return i;
}

Graph wheel5() { return make_target(TargetKind::Wheel, 5).graph; }

}  // namespace

TEST_SUITE("itte") {

TEST_CASE("verify_itte examples") {
    CHECK(verify_itte(plain(complete_graph(3)), {0}));
    CHECK_FALSE(verify_itte(plain(complete_graph(3)), {}));
    for (int x = 0; x < 16; ++x) {
        std::vector<int> s;
        for (int v = 0; v < 4; ++v)
            if (x >> v & 1) s.push_back(v);
        CHECK_FALSE(verify_itte(plain(complete_graph(4)), s));
    }
    ITTEInstance c = plain(cycle_graph(5));
    c.hit_edges = {{0, 1}};
    CHECK_FALSE(verify_itte(c, {}));
    CHECK(verify_itte(c, {1}));
    c.forced_out = {1};
    CHECK_FALSE(verify_itte(c, {1}));
    CHECK(verify_itte(c, {0}));
    CHECK_FALSE(verify_itte(c, {0, 1}));
}

TEST_CASE("oracle examples") {
    CHECK_FALSE(solve_itte_oracle(plain(complete_graph(4))));
    auto c5 = solve_itte_oracle(plain(cycle_graph(5)));
    REQUIRE(c5);
    CHECK(c5->empty());
    // the hub is universal, so X' = {0} forces X = {0}; the rim is triangle-free
    ITTEInstance w = plain(wheel5());
    w.forced_in = {0};
    int found = 0;
    std::vector<int> only;
    for (int m = 0; m < 64; ++m) {
        std::vector<int> s;
        for (int v = 0; v < 6; ++v)
            if (m >> v & 1) s.push_back(v);
        if (oracle::itte_ok(w, s)) ++found, only = s;
    }
    CHECK(found == 1);
    CHECK(only == std::vector<int>{0});
    auto ws = solve_itte_oracle(w);
    REQUIRE(ws);
    CHECK(*ws == std::vector<int>{0});
    ITTEInstance both = plain(cycle_graph(5));
    both.forced_in = {2};
    both.forced_out = {2};
    CHECK_FALSE(solve_itte_oracle(both));
}

TEST_CASE("oracle against subset enumeration, n <= 12") {
    std::mt19937_64 rng(31);
    int yes = 0;
    for (int it = 0; it < 600; ++it) {
        int n = 3 + int(rng() % 10);
        Graph g = oracle::random_graph(n, 0.25 + 0.5 * double(rng() % 100) / 100.0, rng);
        ITTEInstance inst = oracle::random_constraints(g, rng);
        bool truth = oracle::itte_yes(inst);
        auto s = solve_itte_oracle(inst);
        REQUIRE(bool(s) == truth);
        if (s) {
            CHECK(verify_itte(inst, *s));
            CHECK(oracle::itte_ok(inst, *s));
            ++yes;
        }
        auto b = solve_itte_bruteforce(inst);
        CHECK(bool(b) == truth);
    }
    CHECK(yes > 100);
}

TEST_CASE("verify_itte against the plain check") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 500; ++it) {
        Graph g = oracle::random_graph(8, 0.4, rng);
        ITTEInstance inst = oracle::random_constraints(g, rng);
        std::vector<int> x;
        for (int v = 0; v < 8; ++v)
            if (rng() % 3 == 0) x.push_back(v);
        CHECK(verify_itte(inst, x) == oracle::itte_ok(inst, x));
    }
}

TEST_CASE("eliminate_forced_out examples") {
    ITTEInstance e = plain(path_graph(3));
    e.forced_out = {0, 1};
    e.hit_edges = {{0, 1}};
    CHECK_FALSE(eliminate_forced_out(e));

    ITTEInstance t = plain(complete_graph(3));
    t.forced_out = {0, 1};
    auto r = eliminate_forced_out(t);
    REQUIRE(r);
    CHECK(r->inst.g.n() == 1);
    CHECK(r->old_of_new == std::vector<int>{2});
    CHECK(r->inst.forced_in == std::vector<int>{0});

    ITTEInstance one = plain(complete_graph(3));
    one.forced_out = {0};
    auto r1 = eliminate_forced_out(one);
    REQUIRE(r1);
    CHECK(r1->inst.hit_edges == EdgeList{{0, 1}});

    ITTEInstance all3 = plain(complete_graph(3));
    all3.forced_out = {0, 1, 2};
    CHECK_FALSE(eliminate_forced_out(all3));

    ITTEInstance same = plain(cycle_graph(5));
    same.hit_edges = {{1, 2}};
    same.forced_in = {4};
    auto r2 = eliminate_forced_out(same);
    REQUIRE(r2);
    CHECK(r2->inst.g == same.g);
    CHECK(r2->inst.hit_edges == same.hit_edges);
    CHECK(r2->inst.forced_in == same.forced_in);
}

TEST_CASE("eliminate_forced_out keeps the answer, connected n <= 7") {
    std::mt19937_64 rng(33);
    for (int n = 2; n <= 7; ++n)
        for (const Graph& g : enumerate_connected_graphs(n))
            for (int rep = 0; rep < 20; ++rep) {
                ITTEInstance inst = oracle::random_constraints(g, rng, 0.1, 0.3, 0.2);
                bool truth = oracle::itte_yes(inst);
                auto r = eliminate_forced_out(inst);
                bool got = r && oracle::itte_yes(r->inst);
                REQUIRE(got == truth);
                if (r) {
                    CHECK(r->inst.forced_out.empty());
                    auto s = solve_itte_oracle(r->inst);
                    if (s) {
                        std::vector<int> lifted;
                        for (int v : *s) lifted.push_back(r->old_of_new[v]);
                        std::sort(lifted.begin(), lifted.end());
                        CHECK(oracle::itte_ok(inst, lifted));
                    }
                }
            }
}

TEST_CASE("restrict_instance") {
    ITTEInstance i = plain(cycle_graph(5));
    i.forced_in = {0, 3};
    i.hit_edges = {{1, 2}, {3, 4}};
    auto r = restrict_instance(i, {1, 2, 3});
    CHECK(r.g.n() == 3);
    CHECK(r.forced_in == std::vector<int>{2});
    CHECK(r.hit_edges == EdgeList{{0, 1}});
}

TEST_CASE("ITTE text format") {
    ITTEInstance i = plain(cycle_graph(5));
    i.forced_in = {3, 0};
    i.forced_out = {1};
    i.hit_edges = {{2, 1}};
    std::ostringstream out;
    write_itte(out, i);
    CHECK(out.str() == "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\nX':\n0\n3\nY':\n1\nE':\n1 2\n");
    std::istringstream in(out.str());
    ITTEInstance back = read_itte(in);
    std::ostringstream again;
    write_itte(again, back);
    CHECK(again.str() == out.str());
    std::istringstream bad("3 1\n0 1\nX':\n7\n");
    CHECK_THROWS_WITH(read_itte(bad), doctest::Contains("line 4"));
    std::istringstream nonedge("3 1\n0 1\nE':\n1 2\n");
    CHECK_THROWS_WITH(read_itte(nonedge), doctest::Contains("line 4"));
    std::istringstream section("3 1\n0 1\nZ:\n");
    CHECK_THROWS(read_itte(section));
}

}  // TEST_SUITE
