#include "wheelhom/w5.hpp"

#include <algorithm>
#include <array>

#include "wheelhom/decomposition.hpp"

namespace wh {

namespace {

bool c5adj(int a, int b) {
    int d = ((a - b) % 5 + 5) % 5;
    return d == 1 || d == 4;
}

// x -> s*(x-1)+r (mod 5) + 1
struct Sigma {
    int r, s;
    int apply(int x) const { return ((s * (x - 1) + r) % 5 + 5) % 5 + 1; }
    int invert(int y) const {
        for (int x = 1; x <= 5; ++x)
            if (apply(x) == y) return x;
        return -1;
    }
};

std::vector<Sigma> c5_automorphisms() {
    std::vector<Sigma> out;
    for (int s : {1, 4})
        for (int r = 0; r < 5; ++r) out.push_back({r, s});
    return out;
}

void check_c5_colors(const Graph& g, const PartialMap& pre) {
    for (auto [v, c] : pre) {
        if (v < 0 || v >= g.n()) throw std::invalid_argument("precolored vertex out of range: " + std::to_string(v));
        if (c < 1 || c > 5) throw std::invalid_argument("C5 colors are 1..5, got " + std::to_string(c));
    }
}

// witnesses with u as one endpoint; col[v] == 0 means uncolored
template <class F>
void witnesses_from(const Graph& g, const std::vector<int>& col, int u, F&& emit) {
    int a = col[u];
    for (int w : g.nbrs(u)) {
        if (col[w]) {
            if (!c5adj(a, col[w])) emit(std::vector<int>{u, w}, 1);
            continue;
        }
        for (int x : g.nbrs(w)) {
            if (x == u) continue;
            if (col[x]) {
                if (c5adj(a, col[x])) emit(std::vector<int>{u, w, x}, 2);
                continue;
            }
            for (int v : g.nbrs(x)) {
                if (v == u || v == w || !col[v]) continue;
                if (col[v] == a) emit(std::vector<int>{u, w, x, v}, 3);
            }
        }
    }
}

bool conflict_free_at(const Graph& g, const std::vector<int>& col, int u) {
    bool ok = true;
    witnesses_from(g, col, u, [&](const std::vector<int>&, int) { ok = false; });
    return ok;
}

bool is_c5_map(const Graph& g, const std::vector<int>& col) {
    for (int c : col)
        if (c < 1 || c > 5) return false;
    for (auto [u, v] : g.edges())
        if (!c5adj(col[u], col[v])) return false;
    return true;
}

void require_fork_triangle_free(const Graph& g) {
    for (auto& comp : connected_components(g)) {
        Graph h = induced_subgraph(g, comp).g;
        StructureClass s = classify_structure(h);
        if (s.kind == StructureKind::NotApplicable) {
            std::vector<int> w;
            for (int x : s.witness) w.push_back(comp[x]);
            throw PreconditionError("graph is not {S211,K3}-free: " + s.reason, w);
        }
    }
}

// brute-force fill of a short segment between coloured ends (interior <= 2)
bool fill_segment(std::vector<int>& col, const std::vector<int>& seg, int a, int b) {
    int L = static_cast<int>(seg.size());
    std::array<int, 2> pick{};
    for (int c0 = 1; c0 <= 5; ++c0) {
        if (!c5adj(a, c0)) continue;
        if (L == 1) {
            if (c5adj(c0, b)) {
                col[seg[0]] = c0;
                return true;
            }
            continue;
        }
        for (int c1 = 1; c1 <= 5; ++c1)
            if (c5adj(c0, c1) && c5adj(c1, b)) {
                pick = {c0, c1};
                col[seg[0]] = pick[0];
                col[seg[1]] = pick[1];
                return true;
            }
    }
    return false;
}

void extend_path_or_cycle(std::vector<int>& col, const std::vector<int>& order, bool cycle) {
    int n = static_cast<int>(order.size());
    bool any = false;
    for (int v : order) any = any || col[v];
    if (!any) col[*std::min_element(order.begin(), order.end())] = 1;
    if (!cycle) {
        for (int end : {0, n - 1}) {
            if (col[order[end]]) continue;
            int step = end == 0 ? 1 : -1, d = 0, i = end;
            while (!col[order[i]]) i += step, ++d;
            int a = col[order[i]];
            for (int c = 1; c <= 5; ++c) {
                bool ok = d == 1 ? c5adj(a, c) : d == 2 ? !c5adj(a, c) : d == 3 ? c != a : true;
                if (ok) {
                    col[order[end]] = c;
                    break;
                }
            }
        }
    }
    for (;;) {
        // segments of uncoloured vertices between coloured ends
        struct Seg {
            int u, v;
            std::vector<int> inner;
        };
        std::vector<Seg> segs;
        int start = 0;
        if (cycle) {
            while (!col[order[start]]) ++start;
        }
        int limit = cycle ? n : n - 1;
        for (int k = 0; k < limit;) {
            int i = (start + k) % n;
            int j = (i + 1) % n;
            if (col[order[j]]) {
                ++k;
                continue;
            }
            Seg s{order[i], -1, {}};
            int kk = k + 1;
            while (!col[order[(start + kk) % n]]) s.inner.push_back(order[(start + kk) % n]), ++kk;
            s.v = order[(start + kk) % n];
            segs.push_back(std::move(s));
            k = kk;
        }
        if (segs.empty()) return;
        auto longest = std::max_element(segs.begin(), segs.end(),
                                        [](const Seg& x, const Seg& y) { return x.inner.size() < y.inner.size(); });
        if (longest->inner.size() > 2) {
            int a = col[longest->u], b = col[longest->v];
            int w = longest->inner.back();
            for (int c = 1; c <= 5; ++c)
                if (c5adj(c, b) && c != a) {
                    col[w] = c;
                    break;
                }
            continue;
        }
        for (auto& s : segs)
            if (!fill_segment(col, s.inner, col[s.u], col[s.v])) return;
        return;
    }
}

bool extend_acb(const Graph& g, std::vector<int>& col, const StructureClass& s) {
    auto sides = std::array<const std::vector<int>*, 2>{&s.side_a, &s.side_b};
    // subcase (ii): the two degree-1 vertices with adjacent colours
    auto common = [&](int x, int y) {
        for (int z : g.nbrs(x))
            if (g.adjacent(y, z)) return true;
        return false;
    };
    for (int side = 0; side < 2; ++side) {
        const auto& V = *sides[side];
        const auto& U = *sides[1 - side];
        if (V.size() != 2 || U.size() < 3) continue;
        std::vector<int> lonely;
        for (int x : U)
            if (g.degree(x) == 1) lonely.push_back(x);
        if (lonely.size() != 2 || common(lonely[0], lonely[1])) continue;
        int u = lonely[0], v = lonely[1];
        if (!col[u] || !col[v] || !c5adj(col[u], col[v])) break;
        for (auto sg : c5_automorphisms()) {
            if (sg.apply(col[u]) != 1 || sg.apply(col[v]) != 2) continue;
            int up = g.nbrs(u)[0], vp = g.nbrs(v)[0];
            for (int x : U)
                if (!col[x]) col[x] = sg.invert(4);
            if (!col[up]) col[up] = sg.invert(5);
            if (!col[vp]) col[vp] = sg.invert(3);
            return true;
        }
    }
    std::vector<int> saved = col;
    for (int side = 0; side < 2; ++side) {
        const auto& A = *sides[side];
        const auto& B = *sides[1 - side];
        for (auto sg : c5_automorphisms()) {
            bool ok = true;
            for (int x : A)
                if (col[x] && sg.apply(col[x]) != 1 && sg.apply(col[x]) != 3) ok = false;
            for (int x : B)
                if (col[x] && sg.apply(col[x]) != 2 && sg.apply(col[x]) != 4) ok = false;
            if (!ok) continue;
            for (int x : A)
                if (!col[x]) col[x] = sg.invert(3);
            for (int x : B)
                if (!col[x]) col[x] = sg.invert(2);
            if (is_c5_map(g, col)) return true;
            col = saved;
        }
    }
    return false;
}

}  // namespace

std::string structure_name(StructureKind k) {
    switch (k) {
        case StructureKind::Path: return "path";
        case StructureKind::LongCycle: return "long-cycle";
        case StructureKind::AlmostCompleteBipartite: return "almost-complete-bipartite";
        case StructureKind::NotApplicable: return "not-applicable";
    }
    return "?";
}

StructureClass classify_structure(const Graph& g) {
    if (g.n() == 0 || !is_connected(g)) throw GraphError("classify_structure needs a connected graph");
    StructureClass s;
    auto tris = triangles(g);
    if (!tris.empty()) {
        s.reason = "contains K3";
        s.witness = {tris[0][0], tris[0][1], tris[0][2]};
        return s;
    }
    if (auto f = contains_induced(g, PatternId::named(Pattern::S211))) {
        s.reason = "contains S211";
        s.witness = *f;
        return s;
    }
    int n = g.n(), m = g.m();
    if (g.max_degree() <= 2 && m == n - 1) {
        s.kind = StructureKind::Path;
        int start = 0;
        for (int v = 0; v < n; ++v)
            if (g.degree(v) <= 1) {
                start = v;
                break;
            }
        int prev = -1, cur = start;
        while (cur >= 0) {
            s.order.push_back(cur);
            int nxt = -1;
            for (int w : g.nbrs(cur))
                if (w != prev) nxt = w;
            prev = cur;
            cur = nxt;
        }
        return s;
    }
    if (g.max_degree() == 2 && m == n && n >= 5) {
        s.kind = StructureKind::LongCycle;
        s.cycle_length = n;
        int prev = -1, cur = 0;
        do {
            s.order.push_back(cur);
            int nxt = g.nbrs(cur)[0] == prev ? g.nbrs(cur)[1] : g.nbrs(cur)[0];
            prev = cur;
            cur = nxt;
        } while (cur != 0);
        return s;
    }
    auto bip = bipartition(g);
    if (bip) {
        for (int v = 0; v < n; ++v) ((*bip)[v] == 0 ? s.side_a : s.side_b).push_back(v);
        std::vector<int> miss(n, 0);
        bool matching = true;
        for (int a : s.side_a)
            for (int b : s.side_b)
                if (!g.adjacent(a, b)) {
                    s.missing.push_back(norm_edge(a, b));
                    if (++miss[a] > 1 || ++miss[b] > 1) matching = false;
                }
        if (matching) {
            s.kind = StructureKind::AlmostCompleteBipartite;
            return s;
        }
        s.side_a.clear();
        s.side_b.clear();
        s.missing.clear();
    }
    s.reason = "outside the path / long cycle / almost complete bipartite classes";
    return s;
}

bool structure_invariants_hold(const Graph& g, const StructureClass& s) {
    int n = g.n();
    auto is_perm = [&](const std::vector<int>& o) {
        if (static_cast<int>(o.size()) != n) return false;
        std::vector<int> c = o;
        std::sort(c.begin(), c.end());
        for (int i = 0; i < n; ++i)
            if (c[i] != i) return false;
        return true;
    };
    switch (s.kind) {
        case StructureKind::Path:
            if (!is_perm(s.order) || g.m() != n - 1) return false;
            for (int i = 0; i + 1 < n; ++i)
                if (!g.adjacent(s.order[i], s.order[i + 1])) return false;
            return true;
        case StructureKind::LongCycle:
            if (!is_perm(s.order) || g.m() != n || n < 5 || s.cycle_length != n) return false;
            for (int i = 0; i < n; ++i)
                if (!g.adjacent(s.order[i], s.order[(i + 1) % n])) return false;
            return true;
        case StructureKind::AlmostCompleteBipartite: {
            std::vector<int> side(n, -1);
            for (int v : s.side_a) side[v] = 0;
            for (int v : s.side_b) side[v] = 1;
            for (int v = 0; v < n; ++v)
                if (side[v] < 0) return false;
            std::vector<int> miss(n, 0);
            for (auto [u, v] : g.edges())
                if (side[u] == side[v]) return false;
            int expected = 0;
            for (int a : s.side_a)
                for (int b : s.side_b)
                    if (!g.adjacent(a, b)) {
                        ++expected;
                        if (++miss[a] > 1 || ++miss[b] > 1) return false;
                        if (std::find(s.missing.begin(), s.missing.end(), norm_edge(a, b)) == s.missing.end())
                            return false;
                    }
            return expected == static_cast<int>(s.missing.size()) && is_connected(g);
        }
        case StructureKind::NotApplicable: return false;
    }
    return false;
}

std::vector<ConflictWitness> conflicted_pairs(const Graph& g, const PartialMap& pre) {
    check_c5_colors(g, pre);
    std::vector<int> col(g.n(), 0);
    for (auto [v, c] : pre) col[v] = c;
    std::vector<ConflictWitness> out;
    for (auto [u, c] : pre)
        witnesses_from(g, col, u, [&](const std::vector<int>& p, int cond) {
            if (p.back() < u) return;
            out.push_back({u, p.back(), p, cond});
        });
    return out;
}

std::optional<FullMap> extend_c5_greedy(const Graph& g, const PartialMap& pre) {
    check_c5_colors(g, pre);
    if (!conflicted_pairs(g, pre).empty()) return std::nullopt;
    std::vector<int> col(g.n(), 0);
    for (auto [v, c] : pre) col[v] = c;
    for (;;) {
        bool progress = false, open = false;
        for (int v = 0; v < g.n(); ++v) {
            if (col[v]) continue;
            open = true;
            for (int c = 1; c <= 5; ++c) {
                col[v] = c;
                if (conflict_free_at(g, col, v)) {
                    progress = true;
                    break;
                }
                col[v] = 0;
            }
        }
        if (!open) break;
        if (!progress) return std::nullopt;
    }
    if (!is_c5_map(g, col)) throw std::logic_error("greedy C5 extension produced a non-homomorphism");
    return col;
}

std::optional<FullMap> extend_c5(const Graph& g, const PartialMap& pre) {
    check_c5_colors(g, pre);
    require_fork_triangle_free(g);
    if (!conflicted_pairs(g, pre).empty()) return std::nullopt;
    std::vector<int> col(g.n(), 0);
    for (auto [v, c] : pre) col[v] = c;
    for (auto& comp : connected_components(g)) {
        Induced sub = induced_subgraph(g, comp);
        StructureClass s = classify_structure(sub.g);
        std::vector<int> local(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) local[i] = col[comp[i]];
        bool done = false;
        if (s.kind == StructureKind::Path || s.kind == StructureKind::LongCycle) {
            extend_path_or_cycle(local, s.order, s.kind == StructureKind::LongCycle);
            done = is_c5_map(sub.g, local);
        } else {
            done = extend_acb(sub.g, local, s) && is_c5_map(sub.g, local);
        }
        if (!done) {
            PartialMap lp;
            for (std::size_t i = 0; i < comp.size(); ++i)
                if (col[comp[i]]) lp[static_cast<int>(i)] = col[comp[i]];
            auto gr = extend_c5_greedy(sub.g, lp);
            if (!gr) throw std::logic_error("conflict-free precolouring did not extend");
            local = *gr;
        }
        for (std::size_t i = 0; i < comp.size(); ++i) col[comp[i]] = local[i];
    }
    for (auto [v, c] : pre)
        if (col[v] != c) throw std::logic_error("C5 extension overwrote a precoloured vertex");
    if (!is_c5_map(g, col)) throw std::logic_error("C5 extension is not a homomorphism");
    return col;
}

W5Reduction reduce_w5ext_to_itte(const Graph& g, const PartialMap& pre) {
    for (auto [v, c] : pre) {
        if (v < 0 || v >= g.n()) throw std::invalid_argument("precolored vertex out of range: " + std::to_string(v));
        if (c < 0 || c > 5) throw std::invalid_argument("W5 colors are 0..5, got " + std::to_string(c));
    }
    if (auto f = contains_induced(g, PatternId::named(Pattern::S211)))
        throw PreconditionError("graph contains an induced S211", *f);
    W5Reduction r;
    Target w5 = make_target(TargetKind::Wheel, 5);
    for (auto [u, cu] : pre)
        for (int v : g.nbrs(u)) {
            auto it = pre.find(v);
            if (it != pre.end() && !w5.graph.adjacent(cu, it->second)) {
                r.trivial_no = true;
                return r;
            }
        }
    r.inst.g = g;
    PartialMap rim;
    for (auto [v, c] : pre) {
        if (c == 0) r.inst.forced_in.push_back(v);
        else {
            r.inst.forced_out.push_back(v);
            rim[v] = c;
        }
    }
    for (auto& w : conflicted_pairs(g, rim)) {
        if (w.path.size() == 3) r.inst.forced_in.push_back(w.path[1]);
        else if (w.path.size() == 4) r.inst.hit_edges.push_back(norm_edge(w.path[1], w.path[2]));
    }
    r.inst.normalize();
    return r;
}

FullMap lift_solution(const Graph& g, const PartialMap& pre, const ITTESolution& x) {
    std::vector<char> inx(g.n(), 0);
    for (int v : x) inx[v] = 1;
    std::vector<int> rest;
    for (int v = 0; v < g.n(); ++v)
        if (!inx[v]) rest.push_back(v);
    Induced sub = induced_subgraph(g, rest);
    PartialMap lp;
    for (auto [v, c] : pre) {
        if (inx[v]) {
            if (c != 0) throw std::invalid_argument("solution contains a vertex precoloured " + std::to_string(c));
            continue;
        }
        if (c == 0) throw std::invalid_argument("vertex precoloured 0 is missing from the solution");
        lp[sub.new_of_old[v]] = c;
    }
    auto ext = extend_c5(sub.g, lp);
    if (!ext) throw std::logic_error("C5 extension failed on a verified ITTE solution");
    FullMap out(g.n(), 0);
    for (std::size_t i = 0; i < rest.size(); ++i) out[rest[i]] = (*ext)[i];
    if (!verify_map(g, make_target(TargetKind::Wheel, 5), out, pre))
        throw std::logic_error("lifted map is not a W5-colouring");
    return out;
}

std::optional<FullMap> solve_w5ext(const Graph& g, const PartialMap& pre, bool use_oracle) {
    W5Reduction r = reduce_w5ext_to_itte(g, pre);
    if (r.trivial_no) return std::nullopt;
    std::optional<ITTESolution> x;
    if (use_oracle) x = solve_itte_oracle(r.inst);
    else x = solve_itte_s211(r.inst).solution;
    if (!x) return std::nullopt;
    return lift_solution(g, pre, *x);
}

}  // namespace wh
