#include "wheelhom/generators.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wheelhom/clawfree.hpp"
#include "wheelhom/decomposition.hpp"
#include "wheelhom/itte.hpp"

namespace wh {

DiamondChain diamond_chain(int l) {
    if (l < 1) throw std::invalid_argument("chain length must be at least 1");
    EdgeList e;
    for (int i = 0; i < l; ++i) {
        int p = 3 * i, a = p + 1, b = p + 2, q = p + 3;
        e.insert(e.end(), {{p, a}, {p, b}, {a, b}, {a, q}, {b, q}});
    }
    return {build_graph(3 * l + 1, e), 0, 3 * l};
}

Graph build_Q_ell(const Graph& q, int l) {
    if (l < 1) throw std::invalid_argument("chain length must be at least 1");
    for (int v = 0; v < q.n(); ++v)
        if (q.degree(v) != 3) throw std::invalid_argument("build_Q_ell needs a 3-regular graph");
    if (!is_connected(q)) throw std::invalid_argument("build_Q_ell needs a connected graph");
    EdgeList e;
    for (int u = 0; u < q.n(); ++u) e.insert(e.end(), {{3 * u, 3 * u + 1}, {3 * u, 3 * u + 2}, {3 * u + 1, 3 * u + 2}});
    int next = 3 * q.n();
    auto slot = [&](int u, int v) {
        const auto& nb = q.nbrs(u);
        return 3 * u + static_cast<int>(std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
    };
    DiamondChain ch = diamond_chain(l);
    for (auto [u, v] : q.edges()) {
        std::vector<int> map(ch.graph.n());
        map[ch.x1] = slot(u, v);
        map[ch.x2] = slot(v, u);
        for (int i = 1; i < ch.graph.n() - 1; ++i) map[i] = next++;
        for (auto [a, b] : ch.graph.edges()) e.emplace_back(map[a], map[b]);
    }
    Graph out = build_graph(next, e);
    if (contains_induced(out, PatternId::named(Pattern::Claw))) throw std::logic_error("Q_ell is not claw-free");
    if (has_k4(out)) throw std::logic_error("Q_ell contains K4");
    return out;
}

Graph cubic_no_pm_graph() {
    // centre 0; block j: a, b, d, e, s with K4 on {a,b,d,e} minus ab, s adjacent to a, b and the centre
    EdgeList e;
    for (int j = 0; j < 3; ++j) {
        int a = 1 + 5 * j, b = a + 1, d = a + 2, f = a + 3, s = a + 4;
        e.insert(e.end(), {{a, d}, {a, f}, {b, d}, {b, f}, {d, f}, {s, a}, {s, b}, {0, s}});
    }
    Graph g = build_graph(16, e);
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) != 3) throw std::logic_error("cubic_no_pm_graph is not 3-regular");
    if (!is_connected(g)) throw std::logic_error("cubic_no_pm_graph is disconnected");
    auto mate = max_weight_matching(g, std::vector<long long>(g.m(), 1));
    if (std::count(mate.begin(), mate.end(), -1) == 0) throw std::logic_error("cubic_no_pm_graph has a perfect matching");
    return g;
}

ObstructionFamily minimal_obstruction_family(int count, int k) {
    if (count < 1) throw std::invalid_argument("count must be at least 1");
    if (k < 5 || k % 2 == 0) throw std::invalid_argument("k must be odd and at least 5");
    Target t = make_target(TargetKind::Wheel, k);
    Graph q = cubic_no_pm_graph();
    ObstructionFamily fam;
    int ell = 4;
    for (int i = 0; i < count; ++i) {
        Graph ql = build_Q_ell(q, ell);
        Obstruction z = minimize_obstruction(ql, t);
        if (contains_induced(z.g, PatternId::named(Pattern::Claw))) throw std::logic_error("obstruction is not claw-free");
        auto lic = longest_induced_cycle(z.g);
        if (!lic || *lic <= ell) throw std::logic_error("obstruction has no induced cycle longer than the chain bound");
        fam.graphs.push_back(z.g);
        fam.ell.push_back(ell);
        fam.longest_induced_cycle.push_back(*lic);
        ell = *std::max_element(fam.longest_induced_cycle.begin(), fam.longest_induced_cycle.end());
    }
    return fam;
}

PrecoloredInstance s333_hardness_instance(const Graph& g0, bool peel) {
    if (auto w = contains_induced(g0, PatternId::named(Pattern::Claw)))
        throw PreconditionError("graph contains a claw", *w);
    if (g0.max_degree() > 4) throw PreconditionError("graph has a vertex of degree above 4", {});
    std::vector<int> keep(g0.n());
    std::iota(keep.begin(), keep.end(), 0);
    Graph g = g0;
    if (peel) {
        while (true) {
            std::vector<int> low;
            for (int v = 0; v < g.n(); ++v)
                if (g.degree(v) <= 2) low.push_back(v);
            if (low.empty()) break;
            Induced r = remove_vertices(g, low);
            std::vector<int> nk;
            for (int v : r.old_of_new) nk.push_back(keep[v]);
            keep = nk;
            g = r.g;
        }
        if (contains_induced(g, PatternId::named(Pattern::Claw))) throw std::logic_error("peeled graph has a claw");
    }
    int n = g.n();
    EdgeList e = g.edges();
    PrecoloredInstance out;
    for (int v = 0; v < n; ++v) {
        int x = n + 3 * v, y = x + 1, z = x + 2;
        e.insert(e.end(), {{x, y}, {y, z}, {y, v}});
        out.pre[x] = 0;
        out.pre[z] = 4;
    }
    out.g = build_graph(4 * n, e);
    out.original = keep;
    if (out.g.max_degree() > 5) throw std::logic_error("S333 instance has a vertex of degree above 5");
    if (contains_induced(out.g, PatternId::named(Pattern::S333))) throw std::logic_error("S333 instance contains S333");
    return out;
}

bool CnfInstance::all_positive() const {
    for (auto& c : clauses)
        for (auto& l : c)
            if (!l.positive) return false;
    return true;
}

std::vector<int> CnfInstance::occurrences() const {
    std::vector<int> occ(nvars, 0);
    for (auto& c : clauses)
        for (auto& l : c) ++occ[l.var];
    return occ;
}

CnfInstance pos_1in3_transform(const CnfInstance& f) {
    CnfInstance out;
    out.nvars = 5 * f.nvars;
    for (auto& c : f.clauses) {
        std::array<Literal, 3> nc;
        for (int i = 0; i < 3; ++i) nc[i] = {5 * c[i].var + (c[i].positive ? 1 : 0), true};
        out.clauses.push_back(nc);
    }
    for (int x = 0; x < f.nvars; ++x) {
        int x0 = 5 * x, x1 = x0 + 1, a = x0 + 2, b = x0 + 3, c = x0 + 4;
        out.clauses.push_back({Literal{x0, true}, Literal{x1, true}, Literal{a, true}});
        out.clauses.push_back({Literal{x0, true}, Literal{x1, true}, Literal{b, true}});
        out.clauses.push_back({Literal{a, true}, Literal{b, true}, Literal{c, true}});
    }
    return out;
}

bool check_one_in_three(const CnfInstance& f, const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != f.nvars) return false;
    for (auto& c : f.clauses) {
        int t = 0;
        for (auto& l : c) t += (a[l.var] != 0) == l.positive;
        if (t != 1) return false;
    }
    return true;
}

std::optional<std::vector<int>> solve_one_in_three(const CnfInstance& f) {
    int n = f.nvars;
    if (n > 30) throw std::invalid_argument("solve_one_in_three supports at most 30 variables");
    std::vector<int> a(n, -1);
    std::vector<std::vector<int>> byVar(n);
    for (size_t i = 0; i < f.clauses.size(); ++i)
        for (auto& l : f.clauses[i]) byVar[l.var].push_back(static_cast<int>(i));
    auto clauseOk = [&](int ci) {
        int t = 0, open = 0;
        for (auto& l : f.clauses[ci]) {
            if (a[l.var] < 0) ++open;
            else t += (a[l.var] != 0) == l.positive;
        }
        return t <= 1 && t + open >= 1;
    };
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == n) return true;
        for (int val : {0, 1}) {
            a[v] = val;
            bool ok = true;
            for (int ci : byVar[v])
                if (!clauseOk(ci)) {
                    ok = false;
                    break;
                }
            if (ok && rec(v + 1)) return true;
        }
        a[v] = -1;
        return false;
    };
    for (size_t i = 0; i < f.clauses.size(); ++i)
        if (!clauseOk(static_cast<int>(i))) return std::nullopt;
    if (!rec(0)) return std::nullopt;
    return a;
}

CnfInstance read_cnf(std::istream& in, int* line_no) {
    int local = 0;
    int& ln = line_no ? *line_no : local;
    CnfInstance f;
    std::string line;
    auto bad = [&](const std::string& what) { throw std::invalid_argument("line " + std::to_string(ln) + ": " + what); };
    bool header = false, pos = false;
    long long declared = 0;
    std::vector<Literal> pending;
    while (std::getline(in, line)) {
        ++ln;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (tok == "p") {
            if (header) bad("second header");
            std::string kind;
            long long nv, nc;
            std::string extra;
            if (!(ls >> kind >> nv >> nc) || (ls >> extra) || nv < 0 || nc < 0) bad("expected 'p 1in3|pos1in3 nvars nclauses'");
            if (kind == "pos1in3") pos = true;
            else if (kind != "1in3") bad("unknown formula kind '" + kind + "'");
            f.nvars = int(nv);
            declared = nc;
            header = true;
            continue;
        }
        if (!header) bad("clause before header");
        std::istringstream cs(line);
        long long x;
        while (cs >> x) {
            if (x == 0) {
                if (pending.size() != 3) bad("clause must have exactly 3 literals");
                f.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                continue;
            }
            long long v = x > 0 ? x : -x;
            if (v > f.nvars) bad("variable out of range");
            if (x < 0 && pos) bad("negative literal in a pos1in3 formula");
            pending.push_back({int(v - 1), x > 0});
        }
        if (!cs.eof()) bad("bad literal");
    }
    if (!header) throw std::invalid_argument("line " + std::to_string(ln) + ": missing header");
    if (!pending.empty()) bad("unterminated clause");
    if (static_cast<long long>(f.clauses.size()) != declared) bad("clause count does not match the header");
    return f;
}

void write_cnf(std::ostream& out, const CnfInstance& f) {
    out << "p " << (f.all_positive() ? "pos1in3" : "1in3") << ' ' << f.nvars << ' ' << f.clauses.size() << '\n';
    for (auto& c : f.clauses) {
        for (auto& l : c) out << (l.positive ? "" : "-") << l.var + 1 << ' ';
        out << "0\n";
    }
}

Graph crown_graph() {
    Graph g = build_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    // F0 = {2,3,4} goes to the hub all together or not at all
    Target w = make_target(TargetKind::Wheel, 5);
    for (int i = 2; i < 5; ++i)
        for (int j = 2; j < 5; ++j)
            if (i != j && solve_extension(g, w, {{i, 0}, {j, 1}})) throw std::logic_error("crown lost the all-or-none property");
    if (!solve_extension(g, w, {{2, 0}, {3, 0}, {4, 0}}) || !solve_extension(g, w, {{2, 1}, {3, 1}, {4, 1}}))
        throw std::logic_error("crown is not colorable both ways");
    return g;
}

bool in_class_xg(const Graph& g, int girth, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (g.max_degree() > 4) return fail("degree above 4");
    if (contains_induced(g, PatternId::named(Pattern::K14))) return fail("induced K_{1,4}");
    std::vector<int> special;
    for (int v = 0; v < g.n(); ++v) {
        const auto& nb = g.nbrs(v);
        bool found = false;
        for (size_t i = 0; i < nb.size() && !found; ++i)
            for (size_t j = i + 1; j < nb.size() && !found; ++j)
                for (size_t k = j + 1; k < nb.size() && !found; ++k)
                    if (!g.adjacent(nb[i], nb[j]) && !g.adjacent(nb[i], nb[k]) && !g.adjacent(nb[j], nb[k])) found = true;
        if (found) special.push_back(v);
    }
    for (int u : special) {
        auto d = bfs_distances(g, u);
        std::vector<int> nu = g.nbrs(u);
        nu.push_back(u);
        std::sort(nu.begin(), nu.end());
        for (int v : special) {
            if (v <= u || d[v] < 0 || d[v] >= girth) continue;
            std::vector<int> nv = g.nbrs(v);
            nv.push_back(v);
            std::sort(nv.begin(), nv.end());
            if (nu != nv) return fail("vertices " + std::to_string(u) + " and " + std::to_string(v) + " too close");
        }
    }
    return true;
}

XgInstance xg_hardness_instance(const CnfInstance& f, int k, int girth) {
    if (k < 5 || k % 2 == 0) throw std::invalid_argument("k must be odd and at least 5");
    if (!f.all_positive()) throw PreconditionError("formula has a negative literal", {});
    auto occ = f.occurrences();
    for (int x = 0; x < f.nvars; ++x)
        if (occ[x] > 6) throw PreconditionError("variable " + std::to_string(x) + " occurs more than 6 times", {x});
    XgInstance out;
    out.ell = std::max(girth, (k + 1) / 2);
    DiamondChain ch = diamond_chain(out.ell);
    EdgeList e;
    int next = 0;
    auto chain = [&](int a, int b) {
        std::vector<int> map(ch.graph.n());
        map[ch.x1] = a;
        map[ch.x2] = b;
        for (int i = 1; i < ch.graph.n() - 1; ++i) map[i] = next++;
        for (auto [p, q] : ch.graph.edges()) e.emplace_back(map[p], map[q]);
    };
    Graph cr = crown_graph();
    out.occurrence_vertex.assign(f.nvars, {});
    for (int x = 0; x < f.nvars; ++x) {
        int prevLink = -1;
        for (int i = 0; i < occ[x]; ++i) {
            int base = next;
            next += 5;
            for (auto [p, q] : cr.edges()) e.emplace_back(base + p, base + q);
            // c1 links back, c2 links forward, c3 is the occurrence vertex
            if (prevLink >= 0) chain(prevLink, base + 2);
            prevLink = base + 3;
            out.occurrence_vertex[x].push_back(base + 4);
        }
    }
    std::vector<int> used(f.nvars, 0);
    for (auto& c : f.clauses) {
        int t = next;
        next += 3;
        e.insert(e.end(), {{t, t + 1}, {t, t + 2}, {t + 1, t + 2}});
        for (int i = 0; i < 3; ++i) {
            int x = c[i].var;
            chain(t + i, out.occurrence_vertex[x][used[x]++]);
        }
    }
    out.g = build_graph(next, e);
    long long varVerts = 0;
    for (int x = 0; x < f.nvars; ++x)
        if (occ[x] > 0) varVerts += 5LL * occ[x] + (occ[x] - 1LL) * (3 * out.ell - 1);
    long long expect = varVerts + static_cast<long long>(f.clauses.size()) * 9 * out.ell;
    if (out.g.n() != expect) throw std::logic_error("X_g instance has an unexpected vertex count");
    if (out.g.n() > (30LL + 15 * out.ell) * f.nvars + 9LL * out.ell * static_cast<long long>(f.clauses.size()))
        throw std::logic_error("X_g instance exceeds the size bound");
    std::string why;
    if (!in_class_xg(out.g, girth, &why)) throw std::logic_error("X_g instance outside the class: " + why);
    return out;
}

namespace {

bool creates_fork(const Graph& g, int u, int v) {
    static const Graph fork = pattern_graph(PatternId::named(Pattern::S211));
    for (auto [a, b] : fork.edges()) {
        if (find_induced(g, fork, {{a, u}, {b, v}})) return true;
        if (find_induced(g, fork, {{a, v}, {b, u}})) return true;
    }
    return false;
}

}  // namespace

Graph random_fork_free(int n, double density, std::mt19937_64& rng) {
    EdgeList pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::bernoulli_distribution coin(density);
    EdgeList e;
    Graph g(n);
    for (auto [u, v] : pairs) {
        if (!coin(rng)) continue;
        e.emplace_back(u, v);
        Graph h = build_graph(n, e);
        if (creates_fork(h, u, v)) e.pop_back();
        else g = std::move(h);
    }
    return g;
}

Graph random_cubic(int n, std::mt19937_64& rng) {
    if (n < 4 || n % 2) throw std::invalid_argument("random_cubic needs an even n >= 4");
    while (true) {
        std::vector<int> pts;
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < 3; ++i) pts.push_back(v);
        std::shuffle(pts.begin(), pts.end(), rng);
        EdgeList e;
        bool ok = true;
        for (size_t i = 0; i < pts.size() && ok; i += 2) {
            if (pts[i] == pts[i + 1]) ok = false;
            e.push_back(norm_edge(pts[i], pts[i + 1]));
        }
        if (!ok) continue;
        auto s = e;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
        return build_graph(n, e);
    }
}

CnfInstance random_one_in_three(int nvars, int nclauses, bool positive, std::mt19937_64& rng) {
    CnfInstance f;
    f.nvars = nvars;
    std::uniform_int_distribution<int> var(0, nvars - 1);
    std::bernoulli_distribution sign(0.5);
    for (int i = 0; i < nclauses; ++i) {
        std::array<Literal, 3> c;
        for (auto& l : c) l = {var(rng), positive || sign(rng)};
        f.clauses.push_back(c);
    }
    return f;
}

}  // namespace wh
