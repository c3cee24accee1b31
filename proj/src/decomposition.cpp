#include "wheelhom/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "wheelhom/clawfree.hpp"

namespace wh {

void SolveStats::note(const std::string& s) {
    if (std::find(notices.begin(), notices.end(), s) == notices.end()) notices.push_back(s);
}

void SolveStats::merge(const SolveStats& o) {
    branches += o.branches;
    quotients += o.quotients;
    cutsets += o.cutsets;
    tw_calls += o.tw_calls;
    oracle_calls += o.oracle_calls;
    matching_calls += o.matching_calls;
    claw_checks += o.claw_checks;
    claw_violations += o.claw_violations;
    for (auto& s : o.notices) note(s);
}

std::string module_type_name(ModuleType t) {
    switch (t) {
        case ModuleType::Untyped: return "untyped";
        case ModuleType::Type1: return "1";
        case ModuleType::Type2a: return "2a";
        case ModuleType::Type2b: return "2b";
        case ModuleType::Type3: return "3";
    }
    return "?";
}

bool has_k4(const Graph& g) {
    for (auto t : triangles(g)) {
        const auto& a = g.nbrs(t[0]);
        for (int x : a)
            if (x > t[2] && g.adjacent(x, t[1]) && g.adjacent(x, t[2])) return true;
    }
    return false;
}

bool is_module(const Graph& g, const std::vector<int>& m) {
    std::vector<char> in(g.n(), 0);
    for (int v : m) in[v] = 1;
    std::vector<int> cnt(g.n(), 0);
    for (int v : m)
        for (int x : g.nbrs(v)) ++cnt[x];
    for (int x = 0; x < g.n(); ++x)
        if (!in[x] && cnt[x] != 0 && cnt[x] != static_cast<int>(m.size())) return false;
    return true;
}

namespace {

// smallest module containing u and v
std::vector<char> module_closure(const Graph& g, int u, int v) {
    int n = g.n();
    std::vector<char> in(n, 0);
    std::vector<int> cnt(n, 0);
    int size = 0;
    auto add = [&](int x) {
        in[x] = 1;
        ++size;
        for (int y : g.nbrs(x)) ++cnt[y];
    };
    add(u);
    add(v);
    bool grew = true;
    while (grew && size < n) {
        grew = false;
        for (int x = 0; x < n; ++x)
            if (!in[x] && cnt[x] > 0 && cnt[x] < size) {
                add(x);
                grew = true;
            }
    }
    return in;
}

Graph quotient_of(const Graph& g, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> rep(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) rep[i] = blocks[i][0];
    EdgeList e;
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (g.adjacent(rep[i], rep[j])) e.emplace_back(i, j);
    return build_graph(static_cast<int>(blocks.size()), e);
}

}  // namespace

ModulePartition modular_partition(const Graph& g) {
    int n = g.n();
    if (n == 0 || !is_connected(g)) throw GraphError("modular_partition needs a connected graph");
    ModulePartition mp;
    if (n == 1) {
        mp.blocks = {{0}};
        mp.quotient = Graph(1);
        mp.types = {ModuleType::Untyped};
        return mp;
    }
    auto cc = connected_components(complement(g));
    if (cc.size() > 1) {
        mp.blocks = cc;
        mp.clique_quotient = true;
    } else {
        std::vector<int> block(n, -1);
        for (int u = 0; u < n; ++u) {
            if (block[u] >= 0) continue;
            std::vector<char> acc(n, 0);
            acc[u] = 1;
            for (int v = 0; v < n; ++v) {
                if (v == u || acc[v] || block[v] >= 0) continue;
                auto m = module_closure(g, u, v);
                if (std::count(m.begin(), m.end(), 1) == n) continue;
                for (int x = 0; x < n; ++x)
                    if (m[x]) acc[x] = 1;
            }
            std::vector<int> b;
            for (int x = 0; x < n; ++x)
                if (acc[x]) {
                    b.push_back(x);
                    block[x] = static_cast<int>(mp.blocks.size());
                }
            mp.blocks.push_back(b);
        }
    }
    for (auto& b : mp.blocks) std::sort(b.begin(), b.end());
    std::sort(mp.blocks.begin(), mp.blocks.end());
    mp.quotient = quotient_of(g, mp.blocks);
    mp.types.assign(mp.blocks.size(), ModuleType::Untyped);
    return mp;
}

std::optional<QuotientITTE> quotient_itte(const ITTEInstance& inst, const ModulePartition& mp) {
    if (!inst.forced_out.empty()) throw std::invalid_argument("quotient_itte needs Y' empty");
    const Graph& g = inst.g;
    int n = g.n(), k = static_cast<int>(mp.blocks.size());
    std::vector<int> blk(n, -1);
    for (int i = 0; i < k; ++i)
        for (int v : mp.blocks[i]) blk[v] = i;
    std::vector<char> inX(n, 0);
    for (int v : inst.forced_in) inX[v] = 1;
    // E' endpoints whose partner lies outside the block
    std::vector<char> outer(n, 0);
    for (auto [u, v] : inst.hit_edges)
        if (blk[u] != blk[v]) outer[u] = outer[v] = 1;

    QuotientITTE q;
    q.mp = mp;
    q.take.assign(k, {});
    for (int i = 0; i < k; ++i) {
        const auto& M = mp.blocks[i];
        Induced sub = induced_subgraph(g, M);
        bool anyX = std::any_of(M.begin(), M.end(), [&](int v) { return inX[v]; });
        if (sub.g.m() == 0) {
            q.mp.types[i] = ModuleType::Type1;
            q.take[i] = M;
            continue;
        }
        auto side = bipartition(sub.g);
        if (!side) {
            if (anyX) return std::nullopt;
            q.mp.types[i] = ModuleType::Type3;
            continue;
        }
        bool b2 = true;
        std::vector<int> chosen;
        for (const auto& comp : connected_components(sub.g)) {
            int xs = -1, req = -1;
            bool clash = false;
            for (int lv : comp) {
                int v = M[lv], s = (*side)[lv];
                if (inX[v]) {
                    if (xs >= 0 && xs != s) return std::nullopt;
                    xs = s;
                }
                if (inX[v] || outer[v]) {
                    if (req >= 0 && req != s) clash = true;
                    req = s;
                }
            }
            if (clash) {
                b2 = false;
                continue;
            }
            if (comp.size() == 1) {
                if (req >= 0) chosen.push_back(M[comp[0]]);
                continue;
            }
            if (req < 0) req = (*side)[comp[0]];
            for (int lv : comp)
                if ((*side)[lv] == req) chosen.push_back(M[lv]);
        }
        if (b2) {
            q.mp.types[i] = ModuleType::Type2b;
            std::sort(chosen.begin(), chosen.end());
            q.take[i] = chosen;
        } else {
            q.mp.types[i] = ModuleType::Type2a;
        }
    }

    const Graph& Q = mp.quotient;
    ITTEInstance& qi = q.inst;
    qi.g = Q;
    std::vector<char> innerE(k, 0);
    std::vector<std::pair<int, int>> crossE;
    for (auto [u, v] : inst.hit_edges) {
        if (blk[u] == blk[v]) innerE[blk[u]] = 1;
        else crossE.push_back(norm_edge(blk[u], blk[v]));
    }
    for (int i = 0; i < k; ++i) {
        bool add = innerE[i];
        for (int v : mp.blocks[i])
            if (inX[v]) add = true;
        for (int j : Q.nbrs(i))
            if (q.mp.types[j] == ModuleType::Type3 || q.mp.types[j] == ModuleType::Type2a) add = true;
        if (add) qi.forced_in.push_back(i);
    }
    std::sort(crossE.begin(), crossE.end());
    for (auto [i, j] : Q.edges()) {
        auto ti = q.mp.types[i], tj = q.mp.types[j];
        bool add = ti == ModuleType::Type2b || tj == ModuleType::Type2b;
        if (ti == ModuleType::Type1 && tj == ModuleType::Type1 &&
            std::binary_search(crossE.begin(), crossE.end(), Edge{i, j}))
            add = true;
        if (add) qi.hit_edges.emplace_back(i, j);
    }
    qi.normalize();
    return q;
}

ITTESolution lift_quotient(const QuotientITTE& q, const ITTESolution& xq) {
    ITTESolution x;
    for (int i : xq) {
        auto t = q.mp.types[i];
        if (t != ModuleType::Type1 && t != ModuleType::Type2b)
            throw std::logic_error("quotient solution uses a block of type " + module_type_name(t));
        x.insert(x.end(), q.take[i].begin(), q.take[i].end());
    }
    std::sort(x.begin(), x.end());
    return x;
}

namespace {

void all_cliques(const Graph& g, std::vector<int>& cur, const std::vector<int>& cand,
                 std::vector<std::vector<int>>& out) {
    for (size_t i = 0; i < cand.size(); ++i) {
        int v = cand[i];
        cur.push_back(v);
        out.push_back(cur);
        std::vector<int> next;
        for (size_t j = i + 1; j < cand.size(); ++j)
            if (g.adjacent(v, cand[j])) next.push_back(cand[j]);
        all_cliques(g, cur, next, out);
        cur.pop_back();
    }
}

}  // namespace

std::optional<CliqueCutsetPartition> clique_cutset_partition(const Graph& g) {
    int n = g.n();
    if (n == 0) return std::nullopt;
    if (!is_connected(g)) throw GraphError("clique_cutset_partition needs a connected graph");
    std::vector<std::vector<int>> cliques;
    if (!has_k4(g)) {
        for (int v = 0; v < n; ++v) cliques.push_back({v});
        for (auto [u, v] : g.edges()) cliques.push_back({u, v});
        for (auto t : triangles(g)) cliques.push_back({t[0], t[1], t[2]});
    } else {
        std::vector<int> cur, all(n);
        std::iota(all.begin(), all.end(), 0);
        all_cliques(g, cur, all, cliques);
    }
    std::optional<CliqueCutsetPartition> best;
    for (const auto& c : cliques) {
        if (static_cast<int>(c.size()) >= n - 1) continue;
        Induced rest = remove_vertices(g, c);
        auto comps = connected_components(rest.g);
        if (comps.size() < 2) continue;
        for (const auto& comp : comps) {
            bool better = !best || comp.size() < best->a.size() ||
                          (comp.size() == best->a.size() && c.size() < best->c.size());
            if (!better) continue;
            CliqueCutsetPartition p;
            p.c = c;
            std::vector<char> side(n, 2);
            for (int v : c) side[v] = 1;
            for (int lv : comp) {
                p.a.push_back(rest.old_of_new[lv]);
                side[rest.old_of_new[lv]] = 0;
            }
            for (int v = 0; v < n; ++v)
                if (side[v] == 2) p.b.push_back(v);
            std::sort(p.a.begin(), p.a.end());
            best = p;
        }
    }
    return best;
}

namespace {

bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
    return c.empty();
}

std::optional<ITTESolution> atoms_rec(const ITTEInstance& inst, const AtomSolver& solve, SolveStats& st) {
    if (!disjoint_sorted(inst.forced_in, inst.forced_out)) return std::nullopt;
    int n = inst.g.n();
    if (n == 0) return ITTESolution{};
    auto comps = connected_components(inst.g);
    if (comps.size() > 1) {
        ITTESolution x;
        for (const auto& comp : comps) {
            auto s = atoms_rec(restrict_instance(inst, comp), solve, st);
            if (!s) return std::nullopt;
            for (int v : *s) x.push_back(comp[v]);
        }
        std::sort(x.begin(), x.end());
        return x;
    }
    auto p = clique_cutset_partition(inst.g);
    if (!p) return solve(inst);
    ++st.cutsets;
    const auto& C = p->c;
    std::vector<char> inX(n, 0), inY(n, 0);
    for (int v : inst.forced_in) inX[v] = 1;
    for (int v : inst.forced_out) inY[v] = 1;
    int xc = 0;
    for (int v : C) xc += inX[v];
    if (C.size() > 3 || xc >= 2) return std::nullopt;

    std::vector<int> ac = p->a;
    ac.insert(ac.end(), C.begin(), C.end());
    std::sort(ac.begin(), ac.end());
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < ac.size(); ++i) pos[ac[i]] = static_cast<int>(i);

    // candidates C' : empty and each singleton outside Y'
    std::vector<std::vector<int>> cands = {{}};
    for (int v : C)
        if (!inY[v]) cands.push_back({v});
    std::vector<std::optional<ITTESolution>> sideA(cands.size());
    bool any = false, emptyOk = false;
    std::vector<char> singleOk(n, 0);
    for (size_t i = 0; i < cands.size(); ++i) {
        const auto& cp = cands[i];
        if (xc == 1 && (cp.empty() || !inX[cp[0]])) continue;  // X' on C forces that vertex
        ITTEInstance sub = restrict_instance(inst, ac);
        sub.forced_in.clear();
        sub.forced_out.clear();
        for (int v : p->a) {
            if (inX[v]) sub.forced_in.push_back(pos[v]);
            if (inY[v]) sub.forced_out.push_back(pos[v]);
        }
        for (int v : C) {
            if (!cp.empty() && v == cp[0]) sub.forced_in.push_back(pos[v]);
            else sub.forced_out.push_back(pos[v]);
        }
        sub.normalize();
        sideA[i] = solve(sub);
        if (sideA[i]) {
            any = true;
            if (cp.empty()) emptyOk = true;
            else singleOk[cp[0]] = 1;
        }
    }
    if (!any) return std::nullopt;

    std::vector<int> cb = p->b;
    cb.insert(cb.end(), C.begin(), C.end());
    std::sort(cb.begin(), cb.end());
    ITTEInstance ib = restrict_instance(inst, cb);
    std::vector<int> posb(n, -1);
    for (size_t i = 0; i < cb.size(); ++i) posb[cb[i]] = static_cast<int>(i);
    if (!emptyOk) {
        if (C.size() == 2) ib.hit_edges.push_back(norm_edge(posb[C[0]], posb[C[1]]));
        if (C.size() == 1) ib.forced_in.push_back(posb[C[0]]);
    }
    for (int v : C)
        if (!singleOk[v]) ib.forced_out.push_back(posb[v]);
    ib.normalize();
    auto xb = atoms_rec(ib, solve, st);
    if (!xb) return std::nullopt;

    ITTESolution x;
    int cpick = -1;
    for (int v : *xb) {
        int ov = cb[v];
        x.push_back(ov);
        if (std::binary_search(C.begin(), C.end(), ov)) {
            if (cpick >= 0) throw std::logic_error("atom merge: two clique vertices chosen");
            cpick = ov;
        }
    }
    size_t idx = 0;
    if (cpick >= 0) {
        for (idx = 1; idx < cands.size(); ++idx)
            if (cands[idx][0] == cpick) break;
    }
    if (idx >= cands.size() || !sideA[idx]) throw std::logic_error("atom merge: missing side solution");
    for (int v : *sideA[idx]) x.push_back(ac[v]);
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

}  // namespace

std::optional<ITTESolution> solve_itte_atoms(const ITTEInstance& inst, const AtomSolver& atom_solver,
                                             SolveStats* stats) {
    check_instance(inst);
    SolveStats local;
    auto x = atoms_rec(inst, atom_solver, stats ? *stats : local);
    if (x && !verify_itte(inst, *x)) throw std::logic_error("atom recursion produced an invalid solution");
    return x;
}

std::optional<ITTESolution> solve_itte_treewidth(const ITTEInstance& inst, const TreeDecomposition& td) {
    check_instance(inst);
    const Graph& g = inst.g;
    int n = g.n();
    auto err = validate_tree_decomposition(g, td);
    if (!err.empty()) throw std::invalid_argument("invalid tree decomposition: " + err);
    if (td.width() > 62) throw std::invalid_argument("bags over 63 vertices are not supported");
    if (!disjoint_sorted(inst.forced_in, inst.forced_out)) return std::nullopt;
    if (n == 0) return ITTESolution{};

    std::vector<char> inX(n, 0), inY(n, 0);
    for (int v : inst.forced_in) inX[v] = 1;
    for (int v : inst.forced_out) inY[v] = 1;
    std::vector<std::vector<int>> hitNb(n);
    for (auto [u, v] : inst.hit_edges) {
        hitNb[u].push_back(v);
        hitNb[v].push_back(u);
    }
    std::vector<std::vector<std::pair<int, int>>> tri(n);
    for (auto t : triangles(g)) {
        tri[t[0]].push_back({t[1], t[2]});
        tri[t[1]].push_back({t[0], t[2]});
        tri[t[2]].push_back({t[0], t[1]});
    }

    NiceTD nice = make_nice(td, n);
    int N = static_cast<int>(nice.nodes.size());
    using State = std::uint64_t;
    struct Table {
        std::vector<State> st;
        std::vector<int> from, from2;
    };
    std::vector<Table> tab(N);
    auto posIn = [](const std::vector<int>& bag, int v) {
        return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    };
    auto sortUnique = [](std::vector<std::pair<State, std::pair<int, int>>>& tmp, Table& t) {
        std::sort(tmp.begin(), tmp.end());
        for (size_t i = 0; i < tmp.size(); ++i) {
            if (i > 0 && tmp[i].first == tmp[i - 1].first) continue;
            t.st.push_back(tmp[i].first);
            t.from.push_back(tmp[i].second.first);
            t.from2.push_back(tmp[i].second.second);
        }
    };

    for (int id = 0; id < N; ++id) {
        const NiceNode& nd = nice.nodes[id];
        Table& t = tab[id];
        std::vector<std::pair<State, std::pair<int, int>>> tmp;
        switch (nd.kind) {
            case NiceNode::Leaf:
                t.st = {0};
                t.from = {-1};
                t.from2 = {-1};
                break;
            case NiceNode::Introduce: {
                const auto& cbag = nice.nodes[nd.kids[0]].bag;
                int v = nd.v, p = posIn(nd.bag, v);
                State nb = 0;
                for (size_t i = 0; i < cbag.size(); ++i)
                    if (g.adjacent(v, cbag[i])) {
                        int q = static_cast<int>(i) + (cbag[i] > v ? 1 : 0);
                        nb |= State(1) << q;
                    }
                const Table& c = tab[nd.kids[0]];
                State lowMask = (State(1) << p) - 1;
                for (size_t i = 0; i < c.st.size(); ++i) {
                    State s = c.st[i];
                    State w = (s & lowMask) | ((s & ~lowMask) << 1);
                    if (!inX[v]) tmp.push_back({w, {static_cast<int>(i), -1}});
                    if (!inY[v] && (w & nb) == 0) tmp.push_back({w | (State(1) << p), {static_cast<int>(i), -1}});
                }
                sortUnique(tmp, t);
                break;
            }
            case NiceNode::Forget: {
                const auto& cbag = nice.nodes[nd.kids[0]].bag;
                int v = nd.v, p = posIn(cbag, v);
                std::vector<State> need;
                auto bit = [&](int u) -> State {
                    auto it = std::lower_bound(cbag.begin(), cbag.end(), u);
                    if (it == cbag.end() || *it != u) return 0;
                    return State(1) << (it - cbag.begin());
                };
                for (int u : hitNb[v]) {
                    State b = bit(u);
                    if (b) need.push_back(b | (State(1) << p));
                }
                for (auto [a, b] : tri[v]) {
                    State ba = bit(a), bb = bit(b);
                    if (ba && bb) need.push_back(ba | bb | (State(1) << p));
                }
                const Table& c = tab[nd.kids[0]];
                State lowMask = (State(1) << p) - 1;
                for (size_t i = 0; i < c.st.size(); ++i) {
                    State s = c.st[i];
                    bool ok = true;
                    for (State m : need)
                        if ((s & m) == 0) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    State w = (s & lowMask) | ((s >> (p + 1)) << p);
                    tmp.push_back({w, {static_cast<int>(i), -1}});
                }
                sortUnique(tmp, t);
                break;
            }
            case NiceNode::Join: {
                const Table& a = tab[nd.kids[0]];
                const Table& b = tab[nd.kids[1]];
                size_t i = 0, j = 0;
                while (i < a.st.size() && j < b.st.size()) {
                    if (a.st[i] < b.st[j]) ++i;
                    else if (b.st[j] < a.st[i]) ++j;
                    else {
                        t.st.push_back(a.st[i]);
                        t.from.push_back(static_cast<int>(i));
                        t.from2.push_back(static_cast<int>(j));
                        ++i;
                        ++j;
                    }
                }
                break;
            }
        }
    }
    const Table& root = tab[nice.root()];
    if (root.st.empty()) return std::nullopt;

    std::vector<char> inSol(n, 0);
    std::vector<std::pair<int, int>> stack = {{nice.root(), 0}};
    while (!stack.empty()) {
        auto [id, idx] = stack.back();
        stack.pop_back();
        const NiceNode& nd = nice.nodes[id];
        State s = tab[id].st[idx];
        for (size_t i = 0; i < nd.bag.size(); ++i)
            if (s >> i & 1) inSol[nd.bag[i]] = 1;
        if (nd.kind == NiceNode::Join) {
            stack.push_back({nd.kids[0], tab[id].from[idx]});
            stack.push_back({nd.kids[1], tab[id].from2[idx]});
        } else if (nd.kind != NiceNode::Leaf) {
            stack.push_back({nd.kids[0], tab[id].from[idx]});
        }
    }
    ITTESolution x;
    for (int v = 0; v < n; ++v)
        if (inSol[v]) x.push_back(v);
    if (!verify_itte(inst, x)) throw std::logic_error("treewidth DP produced an invalid solution");
    return x;
}

std::optional<ITTESolution> solve_itte_small(const ITTEInstance& inst, SolveStats& st) {
    auto td = tree_decomposition(inst.g, 24);
    if (td && td->width() <= 24) {
        ++st.tw_calls;
        return solve_itte_treewidth(inst, *td);
    }
    ++st.oracle_calls;
    st.note("no decomposition of width <= 24 found; solved with the exhaustive oracle");
    return solve_itte_oracle(inst);
}

namespace {

enum class Mode { Branch, ClawFree };

std::optional<ITTESolution> s211_rec(const ITTEInstance& inst, Mode mode, int threads, SolveStats& st);

std::optional<ITTESolution> s211_connected(const ITTEInstance& I, Mode mode, int threads, SolveStats& st);

std::optional<ITTESolution> branch_prime(const ITTEInstance& I, int threads, SolveStats& st) {
    const Graph& g = I.g;
    int n = g.n();
    std::vector<char> inX(n, 0), inY(n, 0);
    for (int v : I.forced_in) inX[v] = 1;
    for (int v : I.forced_out) inY[v] = 1;
    if (static_cast<int>(I.forced_out.size()) == n) {
        if (I.forced_in.empty() && verify_itte(I, {})) return ITTESolution{};
        return std::nullopt;
    }
    auto tris = triangles(g);

    std::vector<int> order;
    for (int v = 0; v < n; ++v)
        if (!inY[v]) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });

    // builds I_v; nullopt when v cannot be in X
    auto build = [&](int v) -> std::optional<std::pair<ITTEInstance, std::vector<int>>> {
        std::vector<char> nv(n, 0);
        for (int u : g.nbrs(v)) {
            if (inX[u]) return std::nullopt;
            nv[u] = 1;
        }
        for (auto [a, b] : I.hit_edges)
            if (nv[a] && nv[b]) return std::nullopt;
        nv[v] = 2;
        std::vector<int> rest;
        for (int u = 0; u < n; ++u)
            if (!nv[u]) rest.push_back(u);
        ITTEInstance iv = restrict_instance(I, rest);
        std::vector<int> pos(n, -1);
        for (size_t i = 0; i < rest.size(); ++i) pos[rest[i]] = static_cast<int>(i);
        for (auto t : tris) {
            int cv = 0, cn = 0;
            for (int x : t) {
                if (nv[x] == 2) ++cv;
                else if (nv[x] == 1) ++cn;
            }
            if (cv) continue;
            if (cn == 3) return std::nullopt;
            if (cn == 2) {
                for (int x : t)
                    if (!nv[x]) iv.forced_in.push_back(pos[x]);
            } else if (cn == 1) {
                std::vector<int> yz;
                for (int x : t)
                    if (!nv[x]) yz.push_back(pos[x]);
                iv.hit_edges.push_back(norm_edge(yz[0], yz[1]));
            }
        }
        for (auto [a, b] : I.hit_edges) {
            if (nv[a] == 1 && !nv[b]) iv.forced_in.push_back(pos[b]);
            if (nv[b] == 1 && !nv[a]) iv.forced_in.push_back(pos[a]);
        }
        iv.normalize();
        return std::make_pair(std::move(iv), std::move(rest));
    };

    auto run = [&](int v, SolveStats& s) -> std::optional<ITTESolution> {
        auto b = build(v);
        if (!b) return std::nullopt;
        ++s.branches;
        auto xs = s211_rec(b->first, Mode::ClawFree, 1, s);
        if (!xs) return std::nullopt;
        ITTESolution x = {v};
        for (int u : *xs) x.push_back(b->second[u]);
        std::sort(x.begin(), x.end());
        return x;
    };

    if (threads <= 1) {
        for (int v : order)
            if (auto x = run(v, st)) return x;
        return std::nullopt;
    }
    for (size_t start = 0; start < order.size(); start += threads) {
        size_t end = std::min(order.size(), start + threads);
        std::vector<std::optional<ITTESolution>> res(end - start);
        std::vector<SolveStats> sts(end - start);
        std::vector<std::thread> pool;
        for (size_t i = start; i < end; ++i)
            pool.emplace_back([&, i] { res[i - start] = run(order[i], sts[i - start]); });
        for (auto& t : pool) t.join();
        for (auto& s : sts) st.merge(s);
        for (auto& r : res)
            if (r) return r;
    }
    return std::nullopt;
}

std::optional<ITTESolution> s211_connected(const ITTEInstance& I, Mode mode, int threads, SolveStats& st) {
    int n = I.g.n();
    if (n == 0) return ITTESolution{};
    if (has_k4(I.g)) return std::nullopt;
    if (n == 1) return I.forced_in;
    ModulePartition mp = modular_partition(I.g);
    if (static_cast<int>(mp.blocks.size()) < n) {
        ++st.quotients;
        auto q = quotient_itte(I, mp);
        if (!q) return std::nullopt;
        auto xq = s211_connected(q->inst, mode, threads, st);
        if (!xq) return std::nullopt;
        return lift_quotient(*q, *xq);
    }
    if (mode == Mode::Branch) return branch_prime(I, threads, st);
    ++st.claw_checks;
    if (contains_induced(I.g, PatternId::named(Pattern::Claw))) {
        ++st.claw_violations;
        st.note("prime graph in the branching step contains a claw; solved without the claw-free solver");
        return solve_itte_small(I, st);
    }
    return solve_itte_clawfree_unchecked(I, nullptr, st);
}

std::optional<ITTESolution> s211_rec(const ITTEInstance& inst, Mode mode, int threads, SolveStats& st) {
    if (!disjoint_sorted(inst.forced_in, inst.forced_out)) return std::nullopt;
    auto e = eliminate_forced_out(inst);
    if (!e) return std::nullopt;
    const ITTEInstance& I = e->inst;
    ITTESolution x;
    for (const auto& comp : connected_components(I.g)) {
        auto s = s211_connected(restrict_instance(I, comp), mode, threads, st);
        if (!s) return std::nullopt;
        for (int v : *s) x.push_back(e->old_of_new[comp[v]]);
    }
    std::sort(x.begin(), x.end());
    return x;
}

}  // namespace

ITTEResult solve_itte_s211(const ITTEInstance& inst, int threads) {
    check_instance(inst);
    if (auto w = contains_induced(inst.g, PatternId::named(Pattern::S211)))
        throw PreconditionError("graph contains an induced S211", *w);
    ITTEInstance in = inst;
    in.normalize();
    ITTEResult r;
    r.solution = s211_rec(in, Mode::Branch, std::max(1, threads), r.stats);
    if (r.solution && !verify_itte(in, *r.solution))
        throw std::logic_error("S211 solver produced an invalid solution");
    return r;
}

}  // namespace wh
