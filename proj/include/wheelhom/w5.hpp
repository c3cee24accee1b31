#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wheelhom/graph.hpp"
#include "wheelhom/hom.hpp"
#include "wheelhom/itte.hpp"

namespace wh {

enum class StructureKind { Path, LongCycle, AlmostCompleteBipartite, NotApplicable };

struct StructureClass {
    StructureKind kind = StructureKind::NotApplicable;
    std::vector<int> order;            // Path / LongCycle: vertices in order
    int cycle_length = 0;
    std::vector<int> side_a, side_b;   // AlmostCompleteBipartite classes
    EdgeList missing;                  // non-edges across the classes (a matching)
    std::string reason;
    std::vector<int> witness;          // NotApplicable: triangle or fork
};

StructureClass classify_structure(const Graph& g);  // throws GraphError on disconnected input
bool structure_invariants_hold(const Graph& g, const StructureClass& s);
std::string structure_name(StructureKind k);

struct ConflictWitness {
    int u = -1, v = -1;
    std::vector<int> path;  // u ... v
    int condition = 0;      // 1, 2 or 3 (path length)
};

// pre maps into Cycle(5) colors 1..5; every qualifying path is reported once, u < v
std::vector<ConflictWitness> conflicted_pairs(const Graph& g, const PartialMap& pre);

std::optional<FullMap> extend_c5(const Graph& g, const PartialMap& pre);
// colour one vertex at a time while staying conflict-free; complete on {fork, K3}-free graphs
std::optional<FullMap> extend_c5_greedy(const Graph& g, const PartialMap& pre);

struct W5Reduction {
    bool trivial_no = false;
    ITTEInstance inst;
};

W5Reduction reduce_w5ext_to_itte(const Graph& g, const PartialMap& pre);
FullMap lift_solution(const Graph& g, const PartialMap& pre, const ITTESolution& x);

// full pipeline: reduce, solve ITTE with the fork-free solver, lift
std::optional<FullMap> solve_w5ext(const Graph& g, const PartialMap& pre, bool use_oracle = false);

}  // namespace wh
