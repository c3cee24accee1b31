#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wh {

using Edge = std::pair<int, int>;
using EdgeList = std::vector<Edge>;

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple undirected graph on 0..n-1 with strictly sorted neighbor lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}

    int n() const { return static_cast<int>(adj_.size()); }
    int m() const;
    const std::vector<int>& nbrs(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    bool adjacent(int u, int v) const;
    EdgeList edges() const;

    bool operator==(const Graph& o) const { return adj_ == o.adj_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

    friend Graph build_graph(int n, const EdgeList& edges);

private:
    std::vector<std::vector<int>> adj_;
};

Graph build_graph(int n, const EdgeList& edges);

inline Edge norm_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

struct Induced {
    Graph g;
    std::vector<int> old_of_new;
    std::vector<int> new_of_old;  // -1 for dropped vertices
};

Induced induced_subgraph(const Graph& g, const std::vector<int>& keep);
Induced remove_vertices(const Graph& g, const std::vector<int>& drop);
Graph complement(const Graph& g);
Graph disjoint_union(const Graph& a, const Graph& b);

std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
std::optional<std::vector<int>> bipartition(const Graph& g);  // side 0/1 per vertex
std::vector<int> bfs_distances(const Graph& g, int src);

std::vector<std::array<int, 3>> triangles(const Graph& g);
std::optional<int> girth(const Graph& g);  // nullopt = infinite (forest)

struct LineGraph {
    Graph g;
    EdgeList vertex_edge;  // line-graph vertex -> root edge
};
LineGraph line_graph(const Graph& d);

enum class Pattern { K3, K4, K14, Claw, S211, S333, Custom };

struct PatternId {
    Pattern kind = Pattern::K3;
    Graph custom;
    static PatternId named(Pattern p) { return PatternId{p, {}}; }
    static PatternId of(Graph g) { return PatternId{Pattern::Custom, std::move(g)}; }
};

Graph pattern_graph(const PatternId& p);
Graph subdivided_claw(int a, int b, int c);
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);

// Induced copy of pattern in g; witness[i] is the image of pattern vertex i.
// fixed lists pattern->host assignments that must hold.
std::optional<std::vector<int>> find_induced(const Graph& g, const Graph& pattern,
                                             const std::vector<Edge>& fixed = {});
std::optional<std::vector<int>> contains_induced(const Graph& g, const PatternId& p);
bool is_free_of(const Graph& g, Pattern p);

bool isomorphic(const Graph& a, const Graph& b);

// Canonical form for n <= 9: minimum adjacency bitstring over all relabelings.
std::uint64_t canonical_form(const Graph& g);

std::vector<Graph> enumerate_connected_graphs(int n, const std::function<bool(const Graph&)>& filter = {},
                                              bool hereditary = false);

// Longest induced cycle (3 if only triangles); nullopt for forests.
std::optional<int> longest_induced_cycle(const Graph& g, long long node_budget = 50'000'000);

Graph read_graph(std::istream& in, int* line_no = nullptr);
void write_graph(std::ostream& out, const Graph& g);
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

}  // namespace wh
