#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wheelhom/decomposition.hpp"
#include "wheelhom/graph.hpp"
#include "wheelhom/itte.hpp"

namespace wh {

// eta[e] and eta_end[e] are indexed like d.edges(); eta_end[e][0] belongs to edges()[e].first
struct StripStructure {
    Graph d;
    std::vector<std::vector<int>> eta;
    std::vector<std::array<std::vector<int>, 2>> eta_end;
};

struct StripCheck {
    bool ok = true;
    std::string axiom;   // "S1".."S4" or "shape"
    std::string detail;
};

StripCheck validate_strip_structure(const Graph& g, const StripStructure& s);

struct StripGraph {
    Graph g;
    StripStructure strip;
};

// throws std::invalid_argument when |E(d)| < 3 or d has a degree-2 vertex
StripGraph strip_of_line_graph(const Graph& d);

// Recognise g as L(D) with D cubic (edges of g split into triangles, two per vertex).
std::optional<StripStructure> cubic_root_strip(const Graph& g);

StripStructure read_strip(std::istream& in, int* line_no = nullptr);
void write_strip(std::ostream& out, const StripStructure& s);

struct MWMStarInstance {
    Graph g;
    std::vector<int> cover;           // U
    std::vector<long long> w;         // indexed like g.edges()
    long long k = 0;
};

struct MWMStarResult {
    bool yes = false;
    EdgeList matching;
};

// mate[v] = partner or -1; w indexed like g.edges()
std::vector<int> max_weight_matching(const Graph& g, const std::vector<long long>& w);
long long matching_weight(const Graph& g, const std::vector<long long>& w, const std::vector<int>& mate);
long long max_weight_matching_dp(const Graph& g, const std::vector<long long>& w);  // n <= 20

MWMStarResult solve_mwm_star(const MWMStarInstance& inst);

MWMStarInstance read_mwm_star(std::istream& in, int* line_no = nullptr);
void write_mwm_star(std::ostream& out, const MWMStarInstance& inst);

// throws PreconditionError when g contains a claw, std::invalid_argument for a bad strip
ITTEResult solve_itte_clawfree(const ITTEInstance& inst, const std::optional<StripStructure>& strip = std::nullopt);

// same without the claw check; used by the S211 pipeline which asserts claw-freeness itself
std::optional<ITTESolution> solve_itte_clawfree_unchecked(const ITTEInstance& inst, const StripStructure* strip,
                                                          SolveStats& stats);

// D' construction exposed for inspection
struct MatchingReduction {
    bool no = false;                  // Reduction Rule 1 or 2 fired
    std::string reason;
    MWMStarInstance mwm;              // vertices 0..|V(D)|-1 then t_e = |V(D)| + e
    ITTEInstance reduced;             // after Reduction Rule 1
};

MatchingReduction reduce_itte_to_mwm_star(const ITTEInstance& inst, const StripStructure& s);

}  // namespace wh
