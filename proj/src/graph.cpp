#include "wheelhom/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace wh {

int Graph::m() const {
    std::size_t s = 0;
    for (auto& a : adj_) s += a.size();
    return static_cast<int>(s / 2);
}

int Graph::max_degree() const {
    int d = 0;
    for (auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

bool Graph::adjacent(int u, int v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int t = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), t);
}

EdgeList Graph::edges() const {
    EdgeList out;
    for (int u = 0; u < n(); ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph build_graph(int n, const EdgeList& edges) {
    if (n < 0) throw GraphError("negative vertex count");
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& a : g.adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return g;
}

Induced induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    Induced r;
    r.old_of_new = keep;
    r.new_of_old.assign(g.n(), -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
        if (r.new_of_old[keep[i]] != -1) throw GraphError("duplicate vertex in induced set");
        r.new_of_old[keep[i]] = i;
    }
    EdgeList es;
    for (int i = 0; i < static_cast<int>(keep.size()); ++i)
        for (int w : g.nbrs(keep[i])) {
            int j = r.new_of_old[w];
            if (j > i) es.emplace_back(i, j);
        }
    r.g = build_graph(static_cast<int>(keep.size()), es);
    return r;
}

Induced remove_vertices(const Graph& g, const std::vector<int>& drop) {
    std::vector<char> gone(g.n(), 0);
    for (int v : drop) gone[v] = 1;
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v)
        if (!gone[v]) keep.push_back(v);
    return induced_subgraph(g, keep);
}

Graph complement(const Graph& g) {
    EdgeList es;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.adjacent(u, v)) es.emplace_back(u, v);
    return build_graph(g.n(), es);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    EdgeList es = a.edges();
    for (auto [u, v] : b.edges()) es.emplace_back(u + a.n(), v + a.n());
    return build_graph(a.n() + b.n(), es);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> cur{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (int w : g.nbrs(cur[i]))
                if (comp[w] == -1) {
                    comp[w] = comp[s];
                    cur.push_back(w);
                }
        std::sort(cur.begin(), cur.end());
        out.push_back(std::move(cur));
    }
    return out;
}

bool is_connected(const Graph& g) { return g.n() <= 1 || connected_components(g).size() == 1; }

std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> side(g.n(), -1);
    for (int s = 0; s < g.n(); ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::vector<int> st{s};
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (int w : g.nbrs(u)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[u];
                    st.push_back(w);
                } else if (side[w] == side[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> d(g.n(), -1);
    std::queue<int> q;
    d[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.nbrs(u))
            if (d[w] < 0) {
                d[w] = d[u] + 1;
                q.push(w);
            }
    }
    return d;
}

std::vector<std::array<int, 3>> triangles(const Graph& g) {
    std::vector<std::array<int, 3>> out;
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.nbrs(u)) {
            if (v <= u) continue;
            const auto& a = g.nbrs(u);
            const auto& b = g.nbrs(v);
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) ++i;
                else if (a[i] > b[j]) ++j;
                else {
                    if (a[i] > v) out.push_back({u, v, a[i]});
                    ++i, ++j;
                }
            }
        }
    return out;
}

std::optional<int> girth(const Graph& g) {
    int best = -1;
    for (int s = 0; s < g.n(); ++s) {
        std::vector<int> d(g.n(), -1), par(g.n(), -1);
        std::queue<int> q;
        d[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.nbrs(u)) {
                if (d[w] < 0) {
                    d[w] = d[u] + 1;
                    par[w] = u;
                    q.push(w);
                } else if (par[u] != w) {
                    int len = d[u] + d[w] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

LineGraph line_graph(const Graph& d) {
    LineGraph lg;
    lg.vertex_edge = d.edges();
    std::vector<std::vector<int>> inc(d.n());
    for (int i = 0; i < static_cast<int>(lg.vertex_edge.size()); ++i) {
        inc[lg.vertex_edge[i].first].push_back(i);
        inc[lg.vertex_edge[i].second].push_back(i);
    }
    EdgeList es;
    for (auto& l : inc)
        for (std::size_t a = 0; a < l.size(); ++a)
            for (std::size_t b = a + 1; b < l.size(); ++b) es.emplace_back(l[a], l[b]);
    lg.g = build_graph(static_cast<int>(lg.vertex_edge.size()), es);
    return lg;
}

Graph complete_graph(int n) {
    EdgeList es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return build_graph(n, es);
}

Graph cycle_graph(int n) {
    EdgeList es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return build_graph(n, es);
}

Graph path_graph(int n) {
    EdgeList es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return build_graph(n, es);
}

Graph star_graph(int leaves) {
    EdgeList es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return build_graph(leaves + 1, es);
}

// center 0, legs laid out consecutively
Graph subdivided_claw(int a, int b, int c) {
    EdgeList es;
    int next = 1;
    for (int len : {a, b, c}) {
        int prev = 0;
        for (int i = 0; i < len; ++i) {
            es.emplace_back(prev, next);
            prev = next++;
        }
    }
    return build_graph(next, es);
}

Graph pattern_graph(const PatternId& p) {
    switch (p.kind) {
        case Pattern::K3: return complete_graph(3);
        case Pattern::K4: return complete_graph(4);
        case Pattern::K14: return star_graph(4);
        case Pattern::Claw: return star_graph(3);
        case Pattern::S211: return subdivided_claw(2, 1, 1);
        case Pattern::S333: return subdivided_claw(3, 3, 3);
        case Pattern::Custom: return p.custom;
    }
    return {};
}

namespace {

struct InducedSearch {
    const Graph& g;
    const Graph& p;
    std::vector<int> order, anchor, img;
    std::vector<char> used;

    InducedSearch(const Graph& host, const Graph& pat) : g(host), p(pat), img(pat.n(), -1), used(host.n(), 0) {}

    bool compatible(int pv, int hv) const {
        if (used[hv] || g.degree(hv) < p.degree(pv)) return false;
        for (int q = 0; q < p.n(); ++q) {
            if (img[q] < 0 || q == pv) continue;
            if (p.adjacent(pv, q) != g.adjacent(hv, img[q])) return false;
        }
        return true;
    }

    bool rec(std::size_t i) {
        if (i == order.size()) return true;
        int pv = order[i];
        auto attempt = [&](int hv) {
            if (!compatible(pv, hv)) return false;
            img[pv] = hv;
            used[hv] = 1;
            if (rec(i + 1)) return true;
            img[pv] = -1;
            used[hv] = 0;
            return false;
        };
        if (anchor[i] >= 0) {
            for (int hv : g.nbrs(img[anchor[i]]))
                if (attempt(hv)) return true;
        } else {
            for (int hv = 0; hv < g.n(); ++hv)
                if (attempt(hv)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_induced(const Graph& g, const Graph& pattern, const std::vector<Edge>& fixed) {
    if (pattern.n() > g.n()) return std::nullopt;
    if (pattern.n() == 0) return std::vector<int>{};
    InducedSearch s(g, pattern);
    std::vector<char> placed(pattern.n(), 0);
    for (auto [pv, hv] : fixed) {
        if (placed[pv]) continue;
        if (!s.compatible(pv, hv)) return std::nullopt;
        s.img[pv] = hv;
        s.used[hv] = 1;
        placed[pv] = 1;
    }
    // BFS order so every later vertex hangs off an earlier neighbor where possible
    std::vector<int> seeds;
    for (int v = 0; v < pattern.n(); ++v)
        if (placed[v]) seeds.push_back(v);
    std::vector<int> byDeg(pattern.n());
    std::iota(byDeg.begin(), byDeg.end(), 0);
    std::stable_sort(byDeg.begin(), byDeg.end(),
                     [&](int a, int b) { return pattern.degree(a) > pattern.degree(b); });
    std::vector<char> seen = placed;
    std::vector<int> queue = seeds;
    auto drain = [&]() {
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (int w : pattern.nbrs(queue[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                    s.order.push_back(w);
                    s.anchor.push_back(queue[i]);
                }
    };
    drain();
    for (int v : byDeg) {
        if (seen[v]) continue;
        seen[v] = 1;
        queue.push_back(v);
        s.order.push_back(v);
        s.anchor.push_back(-1);
        drain();
    }
    // anchors must already be placed when their dependents are tried
    for (std::size_t i = 0; i < s.order.size(); ++i) {
        if (s.anchor[i] < 0 || placed[s.anchor[i]]) continue;
        auto it = std::find(s.order.begin(), s.order.end(), s.anchor[i]);
        if (it - s.order.begin() > static_cast<long>(i)) s.anchor[i] = -1;
    }
    if (!s.rec(0)) return std::nullopt;
    return s.img;
}

std::optional<std::vector<int>> contains_induced(const Graph& g, const PatternId& p) {
    Graph pat = pattern_graph(p);
    if (pat.n() > 12) throw GraphError("pattern larger than 12 vertices");
    return find_induced(g, pat);
}

bool is_free_of(const Graph& g, Pattern p) { return !contains_induced(g, PatternId::named(p)).has_value(); }

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.n(); ++v) da.push_back(a.degree(v)), db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    if (a.n() <= 9) return canonical_form(a) == canonical_form(b);
    return find_induced(b, a).has_value();
}

namespace {

struct Canon {
    const Graph& g;
    int n;
    int total;
    std::vector<int> perm;
    std::vector<char> used;
    std::vector<int> cand;  // vertices by ascending degree
    std::uint64_t best = 0;
    bool have = false;

    explicit Canon(const Graph& gr) : g(gr), n(gr.n()), total(gr.n() * (gr.n() - 1) / 2), used(gr.n(), 0) {
        cand.resize(n);
        std::iota(cand.begin(), cand.end(), 0);
        std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
    }

    // bits for column j are placed at offsets j*(j-1)/2 .. , MSB first
    void rec(int j, std::uint64_t cur, bool less) {
        if (j == n) {
            if (!have || cur < best) best = cur, have = true;
            return;
        }
        int base = j * (j - 1) / 2;
        for (int v : cand) {
            if (used[v]) continue;
            std::uint64_t c = cur;
            for (int i = 0; i < j; ++i)
                if (g.adjacent(perm[i], v)) c |= std::uint64_t(1) << (total - 1 - (base + i));
            bool l = less;
            if (have && !l) {
                int len = base + j;
                std::uint64_t mask = len == 0 ? 0 : (~std::uint64_t(0)) << (total - len);
                if (total == 0) mask = 0;
                std::uint64_t a = c & mask, b = best & mask;
                if (a > b) continue;
                if (a < b) l = true;
            }
            used[v] = 1;
            perm.push_back(v);
            rec(j + 1, c, l);
            perm.pop_back();
            used[v] = 0;
        }
    }
};

}  // namespace

std::uint64_t canonical_form(const Graph& g) {
    if (g.n() > 11) throw GraphError("canonical form limited to 11 vertices");
    Canon c(g);
    c.rec(0, 0, false);
    // fold n in so graphs of different order never collide
    return (c.best << 4) | static_cast<std::uint64_t>(g.n());
}

std::vector<Graph> enumerate_connected_graphs(int n, const std::function<bool(const Graph&)>& filter,
                                              bool hereditary) {
    if (n < 1) throw GraphError("n must be positive");
    if (n > 9) throw GraphError("enumeration limited to n <= 9");
    auto pass = [&](const Graph& g) { return !filter || filter(g); };
    std::vector<Graph> level;
    Graph k1(1);
    if (!hereditary || pass(k1)) level.push_back(k1);
    for (int k = 2; k <= n; ++k) {
        std::unordered_set<std::uint64_t> seen;
        std::vector<std::pair<std::uint64_t, Graph>> next;
        for (const Graph& h : level) {
            EdgeList base = h.edges();
            int hn = h.n();
            for (std::uint32_t s = 1; s < (1u << hn); ++s) {
                EdgeList es = base;
                for (int v = 0; v < hn; ++v)
                    if (s >> v & 1) es.emplace_back(v, hn);
                Graph cand = build_graph(hn + 1, es);
                std::uint64_t cf = canonical_form(cand);
                if (!seen.insert(cf).second) continue;
                if (hereditary && !pass(cand)) continue;
                next.emplace_back(cf, std::move(cand));
            }
        }
        std::sort(next.begin(), next.end(), [](auto& a, auto& b) { return a.first < b.first; });
        level.clear();
        for (auto& pr : next) level.push_back(std::move(pr.second));
    }
    std::vector<Graph> out;
    for (auto& g : level)
        if (pass(g)) out.push_back(std::move(g));
    return out;
}

std::optional<int> longest_induced_cycle(const Graph& g, long long node_budget) {
    // true twins never both lie on an induced cycle of length >= 4
    std::vector<int> rep(g.n(), -1);
    for (int u = 0; u < g.n(); ++u) {
        if (rep[u] >= 0) continue;
        rep[u] = u;
        for (int v : g.nbrs(u)) {
            if (v <= u || rep[v] >= 0 || g.degree(u) != g.degree(v)) continue;
            bool twin = true;
            for (int w : g.nbrs(u))
                if (w != v && !g.adjacent(v, w)) {
                    twin = false;
                    break;
                }
            if (twin) rep[v] = u;
        }
    }
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v)
        if (rep[v] == v) keep.push_back(v);
    Graph h = induced_subgraph(g, keep).g;
    int best = triangles(g).empty() ? -1 : 3;

    int n = h.n();
    std::vector<int> onpath(n, 0), touch(n, 0), path;
    long long nodes = 0;
    for (int s = 0; s < n; ++s) {
        path.assign(1, s);
        onpath[s] = 1;
        for (int w : h.nbrs(s)) ++touch[w];
        // touch[x] counts path vertices adjacent to x
        std::function<void()> dfs = [&]() {
            if (++nodes > node_budget) throw GraphError("longest_induced_cycle budget exceeded");
            int u = path.back();
            for (int x : h.nbrs(u)) {
                if (x <= s || onpath[x]) continue;
                bool adjS = h.adjacent(x, s);
                int allowed = 1 + (adjS && path.size() > 1 ? 1 : 0);
                if (path.size() == 1) allowed = 1;
                if (touch[x] != allowed) continue;
                if (adjS && path.size() >= 2) {
                    int len = static_cast<int>(path.size()) + 1;
                    if (len >= 4) best = std::max(best, len);
                    continue;
                }
                path.push_back(x);
                onpath[x] = 1;
                for (int w : h.nbrs(x)) ++touch[w];
                dfs();
                for (int w : h.nbrs(x)) --touch[w];
                onpath[x] = 0;
                path.pop_back();
            }
        };
        dfs();
        for (int w : h.nbrs(s)) --touch[w];
        onpath[s] = 0;
    }
    if (best < 0) return std::nullopt;
    return best;
}

Graph read_graph(std::istream& in, int* line_no) {
    int local = 0;
    int& ln = line_no ? *line_no : local;
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++ln;
            auto p = out.find('#');
            if (p != std::string::npos) out.erase(p);
            if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line(line)) throw GraphError("line " + std::to_string(ln) + ": missing header");
    std::istringstream hs(line);
    long long n, m;
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0)
        throw GraphError("line " + std::to_string(ln) + ": expected 'n m'");
    EdgeList es;
    for (long long i = 0; i < m; ++i) {
        if (!next_line(line)) throw GraphError("line " + std::to_string(ln) + ": missing edge lines");
        std::istringstream es_(line);
        long long u, v;
        if (!(es_ >> u >> v) || (es_ >> extra)) throw GraphError("line " + std::to_string(ln) + ": expected 'u v'");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("line " + std::to_string(ln) + ": endpoint out of range");
        if (u == v) throw GraphError("line " + std::to_string(ln) + ": loop edge");
        es.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return build_graph(static_cast<int>(n), es);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

}  // namespace wh
