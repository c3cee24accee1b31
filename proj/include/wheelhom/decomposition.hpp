#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wheelhom/graph.hpp"
#include "wheelhom/itte.hpp"
#include "wheelhom/treedec.hpp"

namespace wh {

struct SolveStats {
    long long branches = 0;        // I_v instances built
    long long quotients = 0;       // non-trivial modular reductions
    long long cutsets = 0;         // clique cutset splits
    long long tw_calls = 0;
    long long oracle_calls = 0;
    long long matching_calls = 0;
    long long claw_checks = 0;     // prime graphs checked for claws before the claw-free solver
    long long claw_violations = 0;
    std::vector<std::string> notices;

    void note(const std::string& s);
    void merge(const SolveStats& o);
};

struct ITTEResult {
    std::optional<ITTESolution> solution;
    SolveStats stats;
    bool yes() const { return solution.has_value(); }
};

enum class ModuleType { Untyped, Type1, Type2a, Type2b, Type3 };
std::string module_type_name(ModuleType t);

struct ModulePartition {
    std::vector<std::vector<int>> blocks;  // sorted, ordered by smallest vertex
    Graph quotient;                        // vertex i = blocks[i]
    std::vector<ModuleType> types;
    bool clique_quotient = false;          // blocks are the co-components
};

// g connected; throws GraphError otherwise
ModulePartition modular_partition(const Graph& g);
bool is_module(const Graph& g, const std::vector<int>& m);

struct QuotientITTE {
    ITTEInstance inst;                     // on mp.quotient
    ModulePartition mp;                    // typed
    std::vector<std::vector<int>> take;    // vertices of G taken when block i is in X
};

// Y' must be empty and g K4-free and connected; nullopt = NoInstance
std::optional<QuotientITTE> quotient_itte(const ITTEInstance& inst, const ModulePartition& mp);
ITTESolution lift_quotient(const QuotientITTE& q, const ITTESolution& xq);

struct CliqueCutsetPartition {
    std::vector<int> a, c, b;
};

// nullopt iff g is an atom; g connected
std::optional<CliqueCutsetPartition> clique_cutset_partition(const Graph& g);

using AtomSolver = std::function<std::optional<ITTESolution>(const ITTEInstance&)>;
std::optional<ITTESolution> solve_itte_atoms(const ITTEInstance& inst, const AtomSolver& atom_solver,
                                             SolveStats* stats = nullptr);

// throws std::invalid_argument on an invalid decomposition or bags over 63 vertices
std::optional<ITTESolution> solve_itte_treewidth(const ITTEInstance& inst, const TreeDecomposition& td);

// treewidth DP when a decomposition of width <= 24 is found, oracle otherwise (with a notice)
std::optional<ITTESolution> solve_itte_small(const ITTEInstance& inst, SolveStats& stats);

bool has_k4(const Graph& g);

// throws PreconditionError when g contains an induced S211
ITTEResult solve_itte_s211(const ITTEInstance& inst, int threads = 1);

}  // namespace wh
