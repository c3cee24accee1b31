#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wheelhom/graph.hpp"

namespace wh {

enum class TargetKind { Wheel, Cycle, Arbitrary };

// Wheel(k): hub 0, rim 1..k. Cycle(k): rim 1..k, vertex 0 is a placeholder outside the domain.
struct Target {
    Graph graph;
    TargetKind kind = TargetKind::Arbitrary;
    int k = 0;
    std::vector<int> domain;
};

Target make_target(TargetKind kind, int k);
Target arbitrary_target(const Graph& h);

using PartialMap = std::map<int, int>;
using FullMap = std::vector<int>;

struct HomStats {
    long long nodes = 0;
    bool used_dp = false;
};

struct HomOptions {
    long long search_budget = 20000;  // nodes before switching to the decomposition DP
    int dp_max_bag = 18;
};

std::optional<FullMap> solve_extension(const Graph& g, const Target& t, const PartialMap& pre = {},
                                       HomStats* stats = nullptr, const HomOptions& opt = {});
std::uint64_t count_homs(const Graph& g, const Target& t);  // throws std::overflow_error
bool verify_map(const Graph& g, const Target& t, const FullMap& m, const PartialMap& pre = {});

// X = m^-1(0) independent, g-X triangle-free, and m restricted to g-X lands on the rim
bool wheel_structure_holds(const Graph& g, const Target& wheel, const FullMap& m);

struct Obstruction {
    Graph g;
    std::vector<int> kept;  // original vertex ids, ascending
};

Obstruction minimize_obstruction(const Graph& g, const Target& t);

struct MinimalityAudit {
    bool obstruction = false;
    std::vector<int> non_essential;  // vertices whose deletion leaves an obstruction
    bool ok() const { return obstruction && non_essential.empty(); }
};
MinimalityAudit audit_minimality(const Graph& g, const Target& t);

PartialMap read_partial_map(std::istream& in, int* line_no = nullptr);
void write_partial_map(std::ostream& out, const PartialMap& m);

}  // namespace wh
