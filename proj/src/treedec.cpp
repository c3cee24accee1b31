#include "wheelhom/treedec.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace wh {

int TreeDecomposition::width() const {
    int w = 0;
    for (auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
    return w - 1;
}

namespace {

struct Eliminator {
    std::vector<std::vector<int>> adj;
    std::vector<char> gone;

    explicit Eliminator(const Graph& g) : gone(g.n(), 0) {
        adj.resize(g.n());
        for (int v = 0; v < g.n(); ++v) adj[v] = g.nbrs(v);
    }

    // returns the neighborhood at elimination time
    std::vector<int> eliminate(int v) {
        std::vector<int> nb = adj[v];
        for (int u : nb) {
            std::vector<int> merged;
            merged.reserve(adj[u].size() + nb.size());
            std::set_union(adj[u].begin(), adj[u].end(), nb.begin(), nb.end(), std::back_inserter(merged));
            merged.erase(std::remove_if(merged.begin(), merged.end(), [&](int x) { return x == u || x == v; }),
                         merged.end());
            adj[u] = std::move(merged);
        }
        adj[v].clear();
        gone[v] = 1;
        return nb;
    }

    long long fill(int v) const {
        long long f = 0;
        const auto& nb = adj[v];
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!std::binary_search(adj[nb[i]].begin(), adj[nb[i]].end(), nb[j])) ++f;
        return f;
    }
};

std::vector<int> min_degree_order(const Graph& g) {
    Eliminator e(g);
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int v = 0; v < g.n(); ++v) pq.emplace(g.degree(v), v);
    std::vector<int> order;
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (e.gone[v] || d != static_cast<int>(e.adj[v].size())) continue;
        order.push_back(v);
        for (int u : e.eliminate(v)) pq.emplace(static_cast<int>(e.adj[u].size()), u);
    }
    return order;
}

std::vector<int> min_fill_order(const Graph& g) {
    Eliminator e(g);
    std::vector<int> order;
    for (int step = 0; step < g.n(); ++step) {
        int best = -1;
        long long bf = 0;
        for (int v = 0; v < g.n(); ++v) {
            if (e.gone[v]) continue;
            long long f = e.fill(v);
            if (best < 0 || f < bf || (f == bf && e.adj[v].size() < e.adj[best].size())) best = v, bf = f;
        }
        order.push_back(best);
        e.eliminate(best);
    }
    return order;
}

}  // namespace

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
    TreeDecomposition td;
    int n = g.n();
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    Eliminator e(g);
    std::vector<int> parent(n, -1);
    td.bags.resize(n);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        auto nb = e.eliminate(v);
        auto& bag = td.bags[i];
        bag = nb;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        int p = -1;
        for (int u : nb)
            if (p < 0 || pos[u] < p) p = pos[u];
        parent[i] = p;
    }
    int prevRoot = -1;
    for (int i = 0; i < n; ++i) {
        if (parent[i] >= 0) {
            td.tree.emplace_back(i, parent[i]);
        } else {
            if (prevRoot >= 0) td.tree.emplace_back(prevRoot, i);
            prevRoot = i;
        }
    }
    return td;
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
    TreeDecomposition best = decomposition_from_order(g, min_degree_order(g));
    if (g.n() <= 400 && best.width() > 2) {
        TreeDecomposition alt = decomposition_from_order(g, min_fill_order(g));
        if (alt.width() < best.width()) best = std::move(alt);
    }
    return best;
}

int exact_treewidth(const Graph& g, std::vector<int>* order) {
    int n = g.n();
    if (n > 16) throw GraphError("exact treewidth limited to 16 vertices");
    if (n == 0) {
        if (order) order->clear();
        return -1;
    }
    std::vector<std::uint32_t> am(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u : g.nbrs(v)) am[v] |= 1u << u;
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<signed char> tw(std::size_t(1) << n, 0), arg(std::size_t(1) << n, -1);
    auto q = [&](std::uint32_t s, int v) {
        std::uint32_t seen = 1u << v, frontier = 1u << v, reach = 0;
        while (frontier) {
            std::uint32_t nxt = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1) {
                int x = __builtin_ctz(f);
                std::uint32_t nb = am[x] & ~seen;
                reach |= nb & ~s;
                nxt |= nb & s;
                seen |= nb;
            }
            frontier = nxt;
        }
        return __builtin_popcount(reach & ~(1u << v));
    };
    tw[0] = -1;
    for (std::uint32_t s = 1; s <= full; ++s) {
        int best = 127, ba = -1;
        for (std::uint32_t r = s; r; r &= r - 1) {
            int v = __builtin_ctz(r);
            std::uint32_t rest = s & ~(1u << v);
            int val = std::max<int>(tw[rest], q(rest, v));
            if (val < best) best = val, ba = v;
        }
        tw[s] = static_cast<signed char>(best);
        arg[s] = static_cast<signed char>(ba);
    }
    if (order) {
        order->clear();
        std::uint32_t s = full;
        while (s) {
            int v = arg[s];
            order->push_back(v);
            s &= ~(1u << v);
        }
        std::reverse(order->begin(), order->end());
    }
    return tw[full];
}

std::optional<TreeDecomposition> tree_decomposition(const Graph& g, int width_budget) {
    TreeDecomposition td = heuristic_decomposition(g);
    if (td.width() <= width_budget) return td;
    if (g.n() <= 16) {
        std::vector<int> order;
        int w = exact_treewidth(g, &order);
        if (w <= width_budget) return decomposition_from_order(g, order);
    }
    return std::nullopt;
}

std::string validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    int nb = static_cast<int>(td.bags.size());
    if (nb == 0) return "no bags";
    if (static_cast<int>(td.tree.size()) != nb - 1) return "tree edge count is not bags-1";
    std::vector<std::vector<int>> tadj(nb);
    for (auto [a, b] : td.tree) {
        if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return "bad tree edge";
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    std::vector<std::vector<int>> holding(g.n());
    for (int i = 0; i < nb; ++i)
        for (int v : td.bags[i]) {
            if (v < 0 || v >= g.n()) return "bag vertex out of range";
            holding[v].push_back(i);
        }
    {
        std::vector<char> seen(nb, 0);
        std::vector<int> st{0};
        seen[0] = 1;
        int cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : tadj[x])
                if (!seen[y]) seen[y] = 1, ++cnt, st.push_back(y);
        }
        if (cnt != nb) return "tree is disconnected";
    }
    for (int v = 0; v < g.n(); ++v)
        if (holding[v].empty()) return "vertex " + std::to_string(v) + " in no bag";
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (int b : holding[u])
            if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), v) ||
                std::find(td.bags[b].begin(), td.bags[b].end(), v) != td.bags[b].end()) {
                ok = true;
                break;
            }
        if (!ok) return "edge " + std::to_string(u) + "-" + std::to_string(v) + " not covered";
    }
    std::vector<char> in(nb, 0), seen(nb, 0);
    for (int v = 0; v < g.n(); ++v) {
        for (int b : holding[v]) in[b] = 1;
        std::vector<int> st{holding[v][0]};
        seen[holding[v][0]] = 1;
        std::size_t cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : tadj[x])
                if (in[y] && !seen[y]) seen[y] = 1, ++cnt, st.push_back(y);
        }
        for (int b : holding[v]) in[b] = 0, seen[b] = 0;
        if (cnt != holding[v].size()) return "bags of vertex " + std::to_string(v) + " are not connected";
    }
    return {};
}

NiceTD make_nice(const TreeDecomposition& td, int) {
    NiceTD out;
    int nb = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> tadj(nb);
    for (auto [a, b] : td.tree) tadj[a].push_back(b), tadj[b].push_back(a);
    std::vector<std::vector<int>> bag(nb);
    for (int i = 0; i < nb; ++i) {
        bag[i] = td.bags[i];
        std::sort(bag[i].begin(), bag[i].end());
    }
    auto push = [&](NiceNode node) {
        out.nodes.push_back(std::move(node));
        return static_cast<int>(out.nodes.size()) - 1;
    };
    auto forget = [&](int child, int v) {
        NiceNode n;
        n.kind = NiceNode::Forget;
        n.v = v;
        n.bag = out.nodes[child].bag;
        n.bag.erase(std::find(n.bag.begin(), n.bag.end(), v));
        n.kids = {child};
        return push(std::move(n));
    };
    auto introduce = [&](int child, int v) {
        NiceNode n;
        n.kind = NiceNode::Introduce;
        n.v = v;
        n.bag = out.nodes[child].bag;
        n.bag.insert(std::lower_bound(n.bag.begin(), n.bag.end(), v), v);
        n.kids = {child};
        return push(std::move(n));
    };
    // morph a node's bag into target by forgets then introduces
    auto morph = [&](int idx, const std::vector<int>& target) {
        std::vector<int> cur = out.nodes[idx].bag;
        for (int v : cur)
            if (!std::binary_search(target.begin(), target.end(), v)) idx = forget(idx, v);
        for (int v : target)
            if (!std::binary_search(cur.begin(), cur.end(), v)) idx = introduce(idx, v);
        return idx;
    };

    // iterative post-order from bag 0
    std::vector<int> parent(nb, -1), order;
    std::vector<char> seen(nb, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        order.push_back(x);
        for (int y : tadj[x])
            if (!seen[y]) seen[y] = 1, parent[y] = x, st.push_back(y);
    }
    std::vector<int> top(nb, -1);
    std::vector<std::vector<int>> kids(nb);
    for (int x : order)
        if (parent[x] >= 0) kids[parent[x]].push_back(x);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        std::vector<int> heads;
        for (int c : kids[x]) heads.push_back(morph(top[c], bag[x]));
        if (heads.empty()) {
            NiceNode leaf;
            heads.push_back(morph(push(std::move(leaf)), bag[x]));
        }
        int cur = heads[0];
        for (std::size_t i = 1; i < heads.size(); ++i) {
            NiceNode j;
            j.kind = NiceNode::Join;
            j.bag = bag[x];
            j.kids = {cur, heads[i]};
            cur = push(std::move(j));
        }
        top[x] = cur;
    }
    morph(top[0], {});
    return out;
}

void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td) {
    for (auto& b : td.bags) {
        out << "b:";
        for (int v : b) out << ' ' << v;
        out << '\n';
    }
    for (auto [a, b] : td.tree) out << "t: " << a << ' ' << b << '\n';
}

TreeDecomposition read_tree_decomposition(std::istream& in, int* line_no) {
    int local = 0;
    int& ln = line_no ? *line_no : local;
    TreeDecomposition td;
    std::string line;
    while (std::getline(in, line)) {
        ++ln;
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "b:") {
            std::vector<int> bag;
            int v;
            while (ls >> v) bag.push_back(v);
            if (!ls.eof()) throw GraphError("line " + std::to_string(ln) + ": bad bag entry");
            std::sort(bag.begin(), bag.end());
            td.bags.push_back(bag);
        } else if (tag == "t:") {
            int a, b;
            std::string extra;
            if (!(ls >> a >> b) || (ls >> extra)) throw GraphError("line " + std::to_string(ln) + ": expected 't: a b'");
            td.tree.emplace_back(a, b);
        } else {
            throw GraphError("line " + std::to_string(ln) + ": unknown tag '" + tag + "'");
        }
    }
    return td;
}

}  // namespace wh
