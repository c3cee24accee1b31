#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wheelhom/graph.hpp"

namespace wh {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // sorted
    EdgeList tree;
    int width() const;
};

// Heuristic (min-degree / min-fill) decomposition, exact search for n <= 16 when
// the heuristic overshoots the budget. nullopt if nothing within budget was found.
std::optional<TreeDecomposition> tree_decomposition(const Graph& g, int width_budget);
TreeDecomposition heuristic_decomposition(const Graph& g);
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order);
int exact_treewidth(const Graph& g, std::vector<int>* order = nullptr);  // n <= 16

// empty string when valid
std::string validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);

struct NiceNode {
    enum Kind { Leaf, Introduce, Forget, Join } kind = Leaf;
    int v = -1;             // introduced / forgotten vertex
    std::vector<int> bag;   // sorted
    std::vector<int> kids;  // indices of children
};

// Nodes are stored children-first; the last node is the root with an empty bag.
struct NiceTD {
    std::vector<NiceNode> nodes;
    int root() const { return static_cast<int>(nodes.size()) - 1; }
};

NiceTD make_nice(const TreeDecomposition& td, int n);

void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td);
TreeDecomposition read_tree_decomposition(std::istream& in, int* line_no = nullptr);

}  // namespace wh
