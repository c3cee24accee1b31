#include "wheelhom/hom.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "wheelhom/treedec.hpp"

namespace wh {

Target make_target(TargetKind kind, int k) {
    Target t;
    t.kind = kind;
    t.k = k;
    if (kind == TargetKind::Arbitrary) throw std::invalid_argument("use arbitrary_target for arbitrary graphs");
    if (k < 3) throw std::invalid_argument("target size must be at least 3");
    if (kind == TargetKind::Wheel && (k % 2 == 0 || k < 5))
        throw std::invalid_argument("wheel size must be odd and at least 5, got " + std::to_string(k));
    if (k > 63) throw std::invalid_argument("target too large");
    EdgeList es;
    for (int i = 1; i <= k; ++i) {
        es.emplace_back(i, i % k + 1);
        if (kind == TargetKind::Wheel) es.emplace_back(0, i);
    }
    t.graph = build_graph(k + 1, es);
    for (int i = kind == TargetKind::Wheel ? 0 : 1; i <= k; ++i) t.domain.push_back(i);
    return t;
}

Target arbitrary_target(const Graph& h) {
    if (h.n() > 64) throw std::invalid_argument("target too large");
    Target t;
    t.graph = h;
    t.kind = TargetKind::Arbitrary;
    t.k = h.n();
    for (int i = 0; i < h.n(); ++i) t.domain.push_back(i);
    return t;
}

namespace {

using Mask = std::uint64_t;

struct BudgetExceeded {};

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowbit(Mask m) { return __builtin_ctzll(m); }

std::vector<Mask> target_masks(const Target& t) {
    std::vector<Mask> nm(t.graph.n(), 0);
    for (int c = 0; c < t.graph.n(); ++c)
        for (int d : t.graph.nbrs(c)) nm[c] |= Mask(1) << d;
    return nm;
}

Mask domain_mask(const Target& t) {
    Mask m = 0;
    for (int c : t.domain) m |= Mask(1) << c;
    return m;
}

// arc consistency over edges; false on wipeout
bool arc_consistency(const Graph& g, const std::vector<Mask>& nm, std::vector<Mask>& dom) {
    std::vector<int> queue;
    std::vector<char> inq(g.n(), 1);
    for (int v = 0; v < g.n(); ++v) queue.push_back(v);
    std::size_t head = 0;
    while (head < queue.size()) {
        int v = queue[head++];
        inq[v] = 0;
        Mask sup = 0;
        for (Mask d = dom[v]; d; d &= d - 1) sup |= nm[lowbit(d)];
        for (int u : g.nbrs(v)) {
            Mask nd = dom[u] & sup;
            if (nd == dom[u]) continue;
            if (!nd) return false;
            dom[u] = nd;
            if (!inq[u]) {
                inq[u] = 1;
                queue.push_back(u);
            }
        }
        if (head > 1024 && head * 2 > queue.size()) {
            queue.erase(queue.begin(), queue.begin() + static_cast<long>(head));
            head = 0;
        }
    }
    return true;
}

struct Search {
    const Graph& g;
    const std::vector<Mask>& nm;
    std::vector<Mask> dom;
    std::vector<int> val;
    std::vector<std::pair<int, Mask>> trail;
    std::unordered_set<std::string> failed;
    long long nodes = 0;
    long long budget = -1;

    Search(const Graph& gr, const std::vector<Mask>& tm, std::vector<Mask> d)
        : g(gr), nm(tm), dom(std::move(d)), val(gr.n(), -1) {}

    std::string key(const std::vector<int>& comp) const {
        std::string k;
        k.reserve(comp.size() * 12);
        for (int v : comp) {
            k.append(reinterpret_cast<const char*>(&v), sizeof v);
            k.append(reinterpret_cast<const char*>(&dom[v]), sizeof(Mask));
        }
        return k;
    }

    void set_dom(int v, Mask m) {
        trail.emplace_back(v, dom[v]);
        dom[v] = m;
    }

    void undo(std::size_t mark) {
        while (trail.size() > mark) {
            auto [v, m] = trail.back();
            trail.pop_back();
            dom[v] = m;
            val[v] = -1;
        }
    }

    std::vector<std::vector<int>> split(const std::vector<int>& verts) {
        std::vector<std::vector<int>> out;
        std::unordered_map<int, int> mark;
        for (int v : verts) mark[v] = -1;
        for (int s : verts) {
            if (mark[s] >= 0) continue;
            std::vector<int> cur{s};
            mark[s] = static_cast<int>(out.size());
            for (std::size_t i = 0; i < cur.size(); ++i)
                for (int w : g.nbrs(cur[i])) {
                    auto it = mark.find(w);
                    if (it != mark.end() && it->second < 0) {
                        it->second = mark[s];
                        cur.push_back(w);
                    }
                }
            std::sort(cur.begin(), cur.end());
            out.push_back(std::move(cur));
        }
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
        return out;
    }

    bool solve(const std::vector<int>& comp) {
        if (comp.empty()) return true;
        std::string k = key(comp);
        if (failed.count(k)) return false;
        int best = -1;
        for (int v : comp)
            if (best < 0 || popcount(dom[v]) < popcount(dom[best]) ||
                (popcount(dom[v]) == popcount(dom[best]) && g.degree(v) > g.degree(best)))
                best = v;
        std::vector<int> rest;
        rest.reserve(comp.size() - 1);
        for (int v : comp)
            if (v != best) rest.push_back(v);
        for (Mask d = dom[best]; d; d &= d - 1) {
            if (budget >= 0 && ++nodes > budget) throw BudgetExceeded{};
            if (budget < 0) ++nodes;
            int c = lowbit(d);
            std::size_t mark = trail.size();
            set_dom(best, Mask(1) << c);
            val[best] = c;
            bool ok = true;
            for (int u : g.nbrs(best)) {
                if (val[u] >= 0) continue;
                if (!std::binary_search(rest.begin(), rest.end(), u)) continue;
                Mask nd = dom[u] & nm[c];
                if (!nd) {
                    ok = false;
                    break;
                }
                if (nd != dom[u]) set_dom(u, nd);
            }
            if (ok) {
                for (auto& sub : split(rest))
                    if (!solve(sub)) {
                        ok = false;
                        break;
                    }
            }
            if (ok) return true;
            undo(mark);
            val[best] = -1;
        }
        if (failed.size() > 2'000'000) failed.clear();
        failed.insert(std::move(k));
        return false;
    }
};

int bits_for(int values) {
    int b = 1;
    while ((1 << b) < values) ++b;
    return b;
}

inline Mask low_mask(int bits) { return bits >= 64 ? ~Mask(0) : ((Mask(1) << bits) - 1); }

struct DPAbort {};

// exact list-hom DP on a tree decomposition; nullopt if it was too wide to try
std::optional<std::optional<std::vector<int>>> hom_dp(const Graph& g, const std::vector<Mask>& nm,
                                                     const std::vector<Mask>& dom, int tvals, int max_bag) {
    TreeDecomposition td = heuristic_decomposition(g);
    int bits = bits_for(tvals);
    if (td.width() + 1 > max_bag || (td.width() + 1) * bits > 64) return std::nullopt;
    NiceTD nice = make_nice(td, g.n());
    const std::size_t cap = 6'000'000;
    std::vector<std::vector<Mask>> states(nice.nodes.size());
    auto get = [&](Mask s, int pos) { return static_cast<int>((s >> (pos * bits)) & low_mask(bits)); };
    auto drop = [&](Mask s, int pos) {
        Mask lo = s & low_mask(pos * bits);
        Mask hi = (pos + 1) * bits >= 64 ? 0 : (s >> ((pos + 1) * bits));
        return lo | (hi << (pos * bits));
    };
    auto insert = [&](Mask s, int pos, int c) {
        Mask lo = s & low_mask(pos * bits);
        Mask hi = pos * bits >= 64 ? 0 : (s >> (pos * bits));
        return lo | (Mask(c) << (pos * bits)) | (hi << ((pos + 1) * bits));
    };
    auto posof = [](const std::vector<int>& bag, int v) {
        return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    };
    try {
        for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
            const NiceNode& nd = nice.nodes[i];
            auto& out = states[i];
            switch (nd.kind) {
                case NiceNode::Leaf: out.push_back(0); break;
                case NiceNode::Introduce: {
                    int p = posof(nd.bag, nd.v);
                    std::vector<int> adjPos;
                    for (int j = 0; j < static_cast<int>(nd.bag.size()); ++j)
                        if (j != p && g.adjacent(nd.v, nd.bag[j])) adjPos.push_back(j < p ? j : j - 1);
                    for (Mask s : states[nd.kids[0]]) {
                        Mask allowed = dom[nd.v];
                        for (int j : adjPos) allowed &= nm[get(s, j)];
                        for (Mask a = allowed; a; a &= a - 1) out.push_back(insert(s, p, lowbit(a)));
                        if (out.size() > cap) throw DPAbort{};
                    }
                    std::sort(out.begin(), out.end());
                    break;
                }
                case NiceNode::Forget: {
                    int p = posof(nice.nodes[nd.kids[0]].bag, nd.v);
                    for (Mask s : states[nd.kids[0]]) out.push_back(drop(s, p));
                    std::sort(out.begin(), out.end());
                    out.erase(std::unique(out.begin(), out.end()), out.end());
                    break;
                }
                case NiceNode::Join: {
                    auto& a = states[nd.kids[0]];
                    auto& b = states[nd.kids[1]];
                    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
                    break;
                }
            }
            if (out.empty()) return std::optional<std::vector<int>>{};
        }
    } catch (const DPAbort&) {
        return std::nullopt;
    }
    std::vector<int> val(g.n(), -1);
    std::vector<Mask> chosen(nice.nodes.size(), 0);
    for (int i = nice.root(); i >= 0; --i) {
        const NiceNode& nd = nice.nodes[i];
        Mask s = chosen[i];
        switch (nd.kind) {
            case NiceNode::Leaf: break;
            case NiceNode::Introduce: {
                int p = posof(nd.bag, nd.v);
                val[nd.v] = get(s, p);
                chosen[nd.kids[0]] = drop(s, p);
                break;
            }
            case NiceNode::Forget: {
                int c = nd.kids[0];
                int p = posof(nice.nodes[c].bag, nd.v);
                bool found = false;
                for (Mask t : states[c])
                    if (drop(t, p) == s) {
                        chosen[c] = t;
                        found = true;
                        break;
                    }
                if (!found) throw std::logic_error("hom DP reconstruction failed");
                break;
            }
            case NiceNode::Join:
                chosen[nd.kids[0]] = s;
                chosen[nd.kids[1]] = s;
                break;
        }
    }
    return std::optional<std::vector<int>>{val};
}

struct Prepared {
    std::vector<Mask> nm;
    std::vector<Mask> dom;
    bool ok = true;
};

Prepared prepare(const Graph& g, const Target& t, const PartialMap& pre) {
    if (t.graph.n() > 64) throw std::invalid_argument("target too large");
    Prepared p;
    p.nm = target_masks(t);
    Mask dm = domain_mask(t);
    p.dom.assign(g.n(), dm);
    for (auto [v, c] : pre) {
        if (v < 0 || v >= g.n()) throw std::invalid_argument("precolored vertex out of range: " + std::to_string(v));
        if (c < 0 || c >= 64 || !(dm >> c & 1))
            throw std::invalid_argument("precolor " + std::to_string(c) + " is not a target vertex");
        p.dom[v] = Mask(1) << c;
    }
    p.ok = arc_consistency(g, p.nm, p.dom);
    return p;
}

}  // namespace

std::optional<FullMap> solve_extension(const Graph& g, const Target& t, const PartialMap& pre, HomStats* stats,
                                       const HomOptions& opt) {
    Prepared p = prepare(g, t, pre);
    if (!p.ok) return std::nullopt;
    FullMap out(g.n(), -1);
    std::vector<int> open;
    for (int v = 0; v < g.n(); ++v) {
        if (popcount(p.dom[v]) == 1) out[v] = lowbit(p.dom[v]);
        else open.push_back(v);
    }
    Induced rest = induced_subgraph(g, open);
    for (auto& comp : connected_components(rest.g)) {
        std::vector<int> orig;
        for (int v : comp) orig.push_back(rest.old_of_new[v]);
        Induced sub = induced_subgraph(g, orig);
        std::vector<Mask> sdom;
        for (int v : orig) sdom.push_back(p.dom[v]);
        std::vector<int> local(orig.size());
        for (std::size_t i = 0; i < local.size(); ++i) local[i] = static_cast<int>(i);

        std::optional<std::vector<int>> res;
        bool decided = false;
        {
            Search s(sub.g, p.nm, sdom);
            s.budget = opt.search_budget;
            try {
                if (s.solve(local)) res = s.val;
                decided = true;
            } catch (const BudgetExceeded&) {
            }
            if (stats) stats->nodes += s.nodes;
        }
        if (!decided) {
            auto dp = hom_dp(sub.g, p.nm, sdom, t.graph.n(), opt.dp_max_bag);
            if (dp) {
                res = *dp;
                decided = true;
                if (stats) stats->used_dp = true;
            }
        }
        if (!decided) {
            Search s(sub.g, p.nm, sdom);
            if (s.solve(local)) res = s.val;
            if (stats) stats->nodes += s.nodes;
        }
        if (!res) return std::nullopt;
        for (std::size_t i = 0; i < orig.size(); ++i) out[orig[i]] = (*res)[i];
    }
    if (!verify_map(g, t, out, pre)) throw std::logic_error("solve_extension produced an invalid map");
    return out;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("homomorphism count overflow");
    return r;
}
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("homomorphism count overflow");
    return r;
}

struct Counter {
    const Graph& g;
    const std::vector<Mask>& nm;
    std::vector<Mask> dom;
    std::vector<char> done;
    std::unordered_map<std::string, std::uint64_t> memo;

    std::string key(const std::vector<int>& comp) const {
        std::string k;
        for (int v : comp) {
            k.append(reinterpret_cast<const char*>(&v), sizeof v);
            k.append(reinterpret_cast<const char*>(&dom[v]), sizeof(Mask));
        }
        return k;
    }

    std::vector<std::vector<int>> split(const std::vector<int>& verts) const {
        std::vector<std::vector<int>> out;
        std::unordered_map<int, int> mark;
        for (int v : verts) mark[v] = -1;
        for (int s : verts) {
            if (mark[s] >= 0) continue;
            std::vector<int> cur{s};
            mark[s] = 0;
            for (std::size_t i = 0; i < cur.size(); ++i)
                for (int w : g.nbrs(cur[i])) {
                    auto it = mark.find(w);
                    if (it != mark.end() && it->second < 0) it->second = 0, cur.push_back(w);
                }
            std::sort(cur.begin(), cur.end());
            out.push_back(std::move(cur));
        }
        return out;
    }

    std::uint64_t count(const std::vector<int>& comp) {
        if (comp.empty()) return 1;
        std::string k = key(comp);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        int best = comp[0];
        for (int v : comp)
            if (popcount(dom[v]) < popcount(dom[best])) best = v;
        std::vector<int> rest;
        for (int v : comp)
            if (v != best) rest.push_back(v);
        std::uint64_t total = 0;
        for (Mask d = dom[best]; d; d &= d - 1) {
            int c = lowbit(d);
            std::vector<std::pair<int, Mask>> saved;
            bool ok = true;
            for (int u : g.nbrs(best)) {
                if (!std::binary_search(rest.begin(), rest.end(), u)) continue;
                saved.emplace_back(u, dom[u]);
                dom[u] &= nm[c];
                if (!dom[u]) ok = false;
            }
            if (ok) {
                std::uint64_t prod = 1;
                for (auto& sub : split(rest)) {
                    std::uint64_t x = count(sub);
                    prod = checked_mul(prod, x);
                    if (!prod) break;
                }
                total = checked_add(total, prod);
            }
            for (auto it = saved.rbegin(); it != saved.rend(); ++it) dom[it->first] = it->second;
        }
        memo.emplace(std::move(k), total);
        return total;
    }
};

}  // namespace

std::uint64_t count_homs(const Graph& g, const Target& t) {
    auto nm = target_masks(t);
    Counter c{g, nm, std::vector<Mask>(g.n(), domain_mask(t)), {}, {}};
    std::uint64_t total = 1;
    for (auto& comp : connected_components(g)) total = checked_mul(total, c.count(comp));
    return total;
}

bool verify_map(const Graph& g, const Target& t, const FullMap& m, const PartialMap& pre) {
    if (static_cast<int>(m.size()) != g.n()) return false;
    for (int c : m)
        if (std::find(t.domain.begin(), t.domain.end(), c) == t.domain.end()) return false;
    for (auto [u, v] : g.edges())
        if (!t.graph.adjacent(m[u], m[v])) return false;
    for (auto [v, c] : pre)
        if (v < 0 || v >= g.n() || m[v] != c) return false;
    return true;
}

bool wheel_structure_holds(const Graph& g, const Target& wheel, const FullMap& m) {
    if (wheel.kind != TargetKind::Wheel || !verify_map(g, wheel, m)) return false;
    std::vector<int> x, rest;
    for (int v = 0; v < g.n(); ++v) (m[v] == 0 ? x : rest).push_back(v);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (g.adjacent(x[i], x[j])) return false;
    Induced r = induced_subgraph(g, rest);
    if (!triangles(r.g).empty()) return false;
    FullMap sub;
    for (int v : rest) sub.push_back(m[v]);
    return verify_map(r.g, make_target(TargetKind::Cycle, wheel.k), sub);
}

namespace {

bool colorable(const Graph& g, const Target& t) { return solve_extension(g, t).has_value(); }

}  // namespace

namespace {

// keep hint away from the centres (and its holes), re-solve only the ball around them
std::optional<FullMap> repair_near(const Graph& g, const Target& t, const FullMap& hint, const std::vector<int>& centres,
                                   int radius) {
    std::vector<int> dist(g.n(), -1), q;
    auto seed = [&](int v) {
        if (dist[v] < 0) dist[v] = 0, q.push_back(v);
    };
    for (int c : centres) seed(c);
    for (int v = 0; v < g.n(); ++v)
        if (hint[v] < 0) seed(v);
    for (std::size_t i = 0; i < q.size(); ++i) {
        int u = q[i];
        if (dist[u] == radius) continue;
        for (int w : g.nbrs(u))
            if (dist[w] < 0) dist[w] = dist[u] + 1, q.push_back(w);
    }
    if (q.empty() || 2 * q.size() > static_cast<std::size_t>(g.n())) return std::nullopt;
    PartialMap pre;
    for (int v = 0; v < g.n(); ++v)
        if (dist[v] < 0) pre.emplace_hint(pre.end(), v, hint[v]);
    return solve_extension(g, t, pre);
}

std::optional<FullMap> solve_hinted(const Graph& g, const Target& t, const FullMap& hint,
                                    const std::vector<int>& centres) {
    if (auto m = repair_near(g, t, hint, centres, 4)) return m;
    return solve_extension(g, t);
}

}  // namespace

Obstruction minimize_obstruction(const Graph& g, const Target& t) {
    if (colorable(g, t)) throw std::invalid_argument("input admits a homomorphism to the target");
    int n = g.n();
    std::vector<char> alive(n, 1);
    FullMap hint(n, -1);  // last map found, original ids

    // delete block L if what is left stays non-colorable; colorable components go with it
    auto try_delete = [&](const std::vector<int>& block) {
        std::vector<char> live = alive;
        for (int v : block) live[v] = 0;
        std::vector<char> seen(n, 0), near(n, 0);
        for (int v : block)
            for (int w : g.nbrs(v)) near[w] = 1;
        std::vector<std::vector<int>> good;
        FullMap found(n, -1);
        bool bad = false;
        for (int s = 0; s < n; ++s) {
            if (!live[s] || seen[s]) continue;
            std::vector<int> comp{s};
            seen[s] = 1;
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (int w : g.nbrs(comp[i]))
                    if (live[w] && !seen[w]) seen[w] = 1, comp.push_back(w);
            std::sort(comp.begin(), comp.end());
            Induced sub = induced_subgraph(g, comp);
            FullMap h(comp.size());
            std::vector<int> centres;
            for (std::size_t i = 0; i < comp.size(); ++i) {
                h[i] = hint[comp[i]];
                if (near[comp[i]]) centres.push_back(static_cast<int>(i));
            }
            if (auto m = solve_hinted(sub.g, t, h, centres)) {
                for (std::size_t i = 0; i < comp.size(); ++i) found[comp[i]] = (*m)[i];
                good.push_back(std::move(comp));
            } else {
                bad = true;
            }
        }
        if (!bad) {
            hint = found;
            return false;
        }
        alive = live;
        for (auto& c : good)
            for (int v : c) alive[v] = 0;
        return true;
    };

    // colorable components first, then ascending deletion; a block is tried whole before its halves
    try_delete({});
    std::function<void(std::vector<int>)> reduce = [&](std::vector<int> block) {
        block.erase(std::remove_if(block.begin(), block.end(), [&](int v) { return !alive[v]; }), block.end());
        if (block.empty() || try_delete(block) || block.size() == 1) return;
        std::size_t h = block.size() / 2;
        reduce(std::vector<int>(block.begin(), block.begin() + h));
        reduce(std::vector<int>(block.begin() + h, block.end()));
    };
    std::vector<int> all;
    for (int v = 0; v < n; ++v)
        if (alive[v]) all.push_back(v);
    reduce(all);

    Obstruction o;
    for (int v = 0; v < n; ++v)
        if (alive[v]) o.kept.push_back(v);
    o.g = induced_subgraph(g, o.kept).g;
    return o;
}

MinimalityAudit audit_minimality(const Graph& g, const Target& t) {
    MinimalityAudit a;
    a.obstruction = !colorable(g, t);
    FullMap hint(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        Induced r = remove_vertices(g, {v});
        FullMap h(r.g.n());
        for (int i = 0; i < r.g.n(); ++i) h[i] = hint[r.old_of_new[i]];
        std::vector<int> centres;
        for (int w : g.nbrs(v)) centres.push_back(r.new_of_old[w]);
        auto m = solve_hinted(r.g, t, h, centres);
        if (!m) {
            a.non_essential.push_back(v);
            continue;
        }
        std::fill(hint.begin(), hint.end(), -1);
        for (int i = 0; i < r.g.n(); ++i) hint[r.old_of_new[i]] = (*m)[i];
    }
    return a;
}

PartialMap read_partial_map(std::istream& in, int* line_no) {
    int local = 0;
    int& ln = line_no ? *line_no : local;
    PartialMap m;
    std::string line;
    while (std::getline(in, line)) {
        ++ln;
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long long v, c;
        std::string arrow, extra;
        if (!(ls >> v >> arrow >> c) || arrow != "->" || (ls >> extra))
            throw std::invalid_argument("line " + std::to_string(ln) + ": expected 'v -> c'");
        if (v < 0 || c < 0) throw std::invalid_argument("line " + std::to_string(ln) + ": negative entry");
        if (m.count(static_cast<int>(v)))
            throw std::invalid_argument("line " + std::to_string(ln) + ": vertex assigned twice");
        m[static_cast<int>(v)] = static_cast<int>(c);
    }
    return m;
}

void write_partial_map(std::ostream& out, const PartialMap& m) {
    for (auto [v, c] : m) out << v << " -> " << c << '\n';
}

}  // namespace wh
