#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wheelhom/graph.hpp"
#include "wheelhom/hom.hpp"

namespace wh {

struct DiamondChain {
    Graph graph;
    int x1 = 0, x2 = 0;
};

// p_i = 3i, middles 3i+1, 3i+2; x1 = 0, x2 = 3l
DiamondChain diamond_chain(int l);

// triangle of u is 3u + i (i-th neighbour of u in sorted order), chain interiors follow per sorted edge
Graph build_Q_ell(const Graph& q, int l);

Graph cubic_no_pm_graph();

struct ObstructionFamily {
    std::vector<Graph> graphs;
    std::vector<int> ell;                   // chain length used for each member
    std::vector<int> longest_induced_cycle;
};

ObstructionFamily minimal_obstruction_family(int count, int k);

struct PrecoloredInstance {
    Graph g;
    PartialMap pre;
    std::vector<int> original;  // graph vertex i < |peeled| is original[i] of the input
};

// throws PreconditionError unless g is claw-free with max degree <= 4
PrecoloredInstance s333_hardness_instance(const Graph& g, bool peel = true);

struct Literal {
    int var = 0;
    bool positive = true;
    bool operator==(const Literal& o) const { return var == o.var && positive == o.positive; }
};

struct CnfInstance {
    int nvars = 0;
    std::vector<std::array<Literal, 3>> clauses;
    bool all_positive() const;
    std::vector<int> occurrences() const;  // per variable
};

CnfInstance pos_1in3_transform(const CnfInstance& f);

// exactly-one assignment by exhaustive search (nvars <= 30)
std::optional<std::vector<int>> solve_one_in_three(const CnfInstance& f);
bool check_one_in_three(const CnfInstance& f, const std::vector<int>& assignment);

CnfInstance read_cnf(std::istream& in, int* line_no = nullptr);
void write_cnf(std::ostream& out, const CnfInstance& f);

// crown: a = 0, b = 1 (adjacent), c1..c3 = 2..4 independent and adjacent to both
Graph crown_graph();

struct XgInstance {
    Graph g;
    int ell = 0;
    std::vector<std::vector<int>> occurrence_vertex;  // per variable, w_i(x)
};

// f all-positive, each variable in at most 6 clauses; throws PreconditionError otherwise
XgInstance xg_hardness_instance(const CnfInstance& f, int k, int girth);

// the three promises of the class X_g
bool in_class_xg(const Graph& g, int girth, std::string* why = nullptr);

// random graph with no induced S211 (edges added in random order, skipped when they create one)
Graph random_fork_free(int n, double density, std::mt19937_64& rng);
Graph random_cubic(int n, std::mt19937_64& rng);  // simple, n even >= 4
CnfInstance random_one_in_three(int nvars, int nclauses, bool positive, std::mt19937_64& rng);

}  // namespace wh
