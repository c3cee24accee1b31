#include "wheelhom/itte.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wh {

void ITTEInstance::normalize() {
    auto tidy = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    tidy(forced_in);
    tidy(forced_out);
    for (auto& e : hit_edges) e = norm_edge(e.first, e.second);
    std::sort(hit_edges.begin(), hit_edges.end());
    hit_edges.erase(std::unique(hit_edges.begin(), hit_edges.end()), hit_edges.end());
}

void check_instance(const ITTEInstance& inst) {
    int n = inst.g.n();
    for (int v : inst.forced_in)
        if (v < 0 || v >= n) throw std::invalid_argument("X' vertex out of range: " + std::to_string(v));
    for (int v : inst.forced_out)
        if (v < 0 || v >= n) throw std::invalid_argument("Y' vertex out of range: " + std::to_string(v));
    for (auto [u, v] : inst.hit_edges)
        if (u < 0 || v < 0 || u >= n || v >= n || !inst.g.adjacent(u, v))
            throw std::invalid_argument("E' pair is not an edge: " + std::to_string(u) + " " + std::to_string(v));
}

bool verify_itte(const ITTEInstance& inst, const ITTESolution& x) {
    const Graph& g = inst.g;
    std::vector<char> in(g.n(), 0);
    for (int v : x) {
        if (v < 0 || v >= g.n()) return false;
        in[v] = 1;
    }
    for (int v : x)
        for (int w : g.nbrs(v))
            if (in[w]) return false;
    for (int v : inst.forced_in)
        if (!in[v]) return false;
    for (int v : inst.forced_out)
        if (in[v]) return false;
    for (auto [u, v] : inst.hit_edges)
        if (!in[u] && !in[v]) return false;
    for (auto& t : triangles(g))
        if (!in[t[0]] && !in[t[1]] && !in[t[2]]) return false;
    return true;
}

namespace {

enum : char { Unknown = 0, In = 1, Out = 2 };

struct OracleCtx {
    const Graph& g;
    std::vector<std::array<int, 3>> tris;
    EdgeList hits;
    std::vector<std::vector<int>> triOf, hitOf;

    explicit OracleCtx(const ITTEInstance& inst) : g(inst.g), tris(triangles(inst.g)), hits(inst.hit_edges) {
        triOf.resize(g.n());
        hitOf.resize(g.n());
        for (int i = 0; i < static_cast<int>(tris.size()); ++i)
            for (int v : tris[i]) triOf[v].push_back(i);
        for (int i = 0; i < static_cast<int>(hits.size()); ++i) {
            hitOf[hits[i].first].push_back(i);
            hitOf[hits[i].second].push_back(i);
        }
    }

    bool assign(std::vector<char>& st, int v, char s, std::vector<int>& queue) const {
        if (st[v] == s) return true;
        if (st[v] != Unknown) return false;
        st[v] = s;
        queue.push_back(v);
        return true;
    }

    bool propagate(std::vector<char>& st, std::vector<int> queue) const {
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int v = queue[h];
            if (st[v] == In) {
                for (int w : g.nbrs(v))
                    if (!assign(st, w, Out, queue)) return false;
                continue;
            }
            for (int i : hitOf[v]) {
                int o = hits[i].first == v ? hits[i].second : hits[i].first;
                if (!assign(st, o, In, queue)) return false;
            }
            for (int i : triOf[v]) {
                auto& t = tris[i];
                int outs = 0, unk = -1;
                bool hit = false;
                for (int x : t) {
                    if (st[x] == Out) ++outs;
                    else if (st[x] == In) hit = true;
                    else unk = x;
                }
                if (hit) continue;
                if (outs == 3) return false;
                if (outs == 2 && !assign(st, unk, In, queue)) return false;
            }
        }
        return true;
    }

    bool search(std::vector<char>& st) const {
        // pick the open constraint with the fewest unknown vertices
        int bestSize = 4;
        std::vector<int> bestSet;
        for (auto& t : tris) {
            if (st[t[0]] == In || st[t[1]] == In || st[t[2]] == In) continue;
            std::vector<int> u;
            for (int x : t)
                if (st[x] == Unknown) u.push_back(x);
            if (static_cast<int>(u.size()) < bestSize) bestSize = static_cast<int>(u.size()), bestSet = u;
        }
        for (auto [a, b] : hits) {
            if (st[a] == In || st[b] == In) continue;
            std::vector<int> u;
            for (int x : {a, b})
                if (st[x] == Unknown) u.push_back(x);
            if (static_cast<int>(u.size()) < bestSize) bestSize = static_cast<int>(u.size()), bestSet = u;
        }
        if (bestSize == 4) return true;
        if (bestSet.empty()) return false;
        std::vector<int> earlier;
        for (int x : bestSet) {
            std::vector<char> copy = st;
            std::vector<int> q;
            bool ok = assign(copy, x, In, q);
            for (int y : earlier) ok = ok && assign(copy, y, Out, q);
            if (ok && propagate(copy, q) && search(copy)) {
                st = std::move(copy);
                return true;
            }
            earlier.push_back(x);
        }
        return false;
    }
};

bool forced_sets_clash(const ITTEInstance& inst) {
    std::vector<int> a = inst.forced_in, b = inst.forced_out;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<int> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    return !both.empty();
}

}  // namespace

std::optional<ITTESolution> solve_itte_oracle(const ITTEInstance& inst) {
    check_instance(inst);
    if (forced_sets_clash(inst)) return std::nullopt;
    OracleCtx ctx(inst);
    std::vector<char> st(inst.g.n(), Unknown);
    std::vector<int> q;
    for (int v : inst.forced_out)
        if (!ctx.assign(st, v, Out, q)) return std::nullopt;
    for (int v : inst.forced_in)
        if (!ctx.assign(st, v, In, q)) return std::nullopt;
    if (!ctx.propagate(st, q)) return std::nullopt;
    if (!ctx.search(st)) return std::nullopt;
    ITTESolution x;
    for (int v = 0; v < inst.g.n(); ++v)
        if (st[v] == In) x.push_back(v);
    if (!verify_itte(inst, x)) throw std::logic_error("ITTE oracle produced an invalid set");
    return x;
}

std::optional<ITTESolution> solve_itte_bruteforce(const ITTEInstance& inst) {
    int n = inst.g.n();
    if (n > 24) throw std::invalid_argument("brute force limited to 24 vertices");
    std::vector<std::uint32_t> am(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u : inst.g.nbrs(v)) am[v] |= 1u << u;
    std::uint32_t xin = 0, yout = 0;
    for (int v : inst.forced_in) xin |= 1u << v;
    for (int v : inst.forced_out) yout |= 1u << v;
    std::vector<std::uint32_t> tm, em;
    for (auto& t : triangles(inst.g)) tm.push_back((1u << t[0]) | (1u << t[1]) | (1u << t[2]));
    for (auto [u, v] : inst.hit_edges) em.push_back((1u << u) | (1u << v));
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
        std::uint32_t x = static_cast<std::uint32_t>(s);
        if ((x & xin) != xin || (x & yout)) continue;
        bool ok = true;
        for (std::uint32_t r = x; r && ok; r &= r - 1)
            if (am[__builtin_ctz(r)] & x) ok = false;
        for (auto m : tm)
            if (ok && !(m & x)) ok = false;
        for (auto m : em)
            if (ok && !(m & x)) ok = false;
        if (!ok) continue;
        ITTESolution out;
        for (int v = 0; v < n; ++v)
            if (x >> v & 1) out.push_back(v);
        return out;
    }
    return std::nullopt;
}

std::optional<Eliminated> eliminate_forced_out(const ITTEInstance& inst) {
    check_instance(inst);
    const Graph& g = inst.g;
    std::vector<char> y(g.n(), 0);
    for (int v : inst.forced_out) y[v] = 1;
    if (inst.forced_out.empty()) {
        Eliminated e{inst, {}};
        e.inst.normalize();
        for (int v = 0; v < g.n(); ++v) e.old_of_new.push_back(v);
        return e;
    }
    std::vector<int> xin = inst.forced_in;
    EdgeList hits;
    for (auto [u, v] : inst.hit_edges) {
        if (y[u] && y[v]) return std::nullopt;
        if (y[u]) xin.push_back(v);
        else if (y[v]) xin.push_back(u);
        else hits.push_back(norm_edge(u, v));
    }
    for (auto& t : triangles(g)) {
        int cnt = y[t[0]] + y[t[1]] + y[t[2]];
        if (cnt == 3) return std::nullopt;
        if (cnt == 2) {
            for (int x : t)
                if (!y[x]) xin.push_back(x);
        } else if (cnt == 1) {
            std::vector<int> r;
            for (int x : t)
                if (!y[x]) r.push_back(x);
            hits.push_back(norm_edge(r[0], r[1]));
        }
    }
    for (int v : xin)
        if (y[v]) return std::nullopt;
    Induced sub = remove_vertices(g, inst.forced_out);
    Eliminated e;
    e.inst.g = sub.g;
    e.old_of_new = sub.old_of_new;
    for (int v : xin) e.inst.forced_in.push_back(sub.new_of_old[v]);
    for (auto [u, v] : hits) e.inst.hit_edges.emplace_back(sub.new_of_old[u], sub.new_of_old[v]);
    e.inst.normalize();
    return e;
}

ITTEInstance restrict_instance(const ITTEInstance& inst, const std::vector<int>& keep) {
    Induced sub = induced_subgraph(inst.g, keep);
    ITTEInstance out;
    out.g = sub.g;
    for (int v : inst.forced_in)
        if (sub.new_of_old[v] >= 0) out.forced_in.push_back(sub.new_of_old[v]);
    for (int v : inst.forced_out)
        if (sub.new_of_old[v] >= 0) out.forced_out.push_back(sub.new_of_old[v]);
    for (auto [u, v] : inst.hit_edges)
        if (sub.new_of_old[u] >= 0 && sub.new_of_old[v] >= 0)
            out.hit_edges.emplace_back(sub.new_of_old[u], sub.new_of_old[v]);
    out.normalize();
    return out;
}

ITTEInstance read_itte(std::istream& in, int* line_no) {
    int local = 0;
    int& ln = line_no ? *line_no : local;
    ITTEInstance inst;
    inst.g = read_graph(in, &ln);
    enum { None, X, Y, E } sec = None;
    std::string line;
    while (std::getline(in, line)) {
        ++ln;
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "X':") { sec = X; }
        else if (tok == "Y':") { sec = Y; }
        else if (tok == "E':") { sec = E; }
        else {
            std::istringstream es(line);
            long long a, b;
            std::string extra;
            auto bad = [&](const std::string& what) {
                throw std::invalid_argument("line " + std::to_string(ln) + ": " + what);
            };
            if (sec == None) bad("entry before any section header");
            if (sec == E) {
                if (!(es >> a >> b) || (es >> extra)) bad("expected 'u v'");
                if (a < 0 || b < 0 || a >= inst.g.n() || b >= inst.g.n() || !inst.g.adjacent(int(a), int(b)))
                    bad("E' pair is not an edge");
                inst.hit_edges.emplace_back(int(a), int(b));
            } else {
                if (!(es >> a) || (es >> extra)) bad("expected a single vertex");
                if (a < 0 || a >= inst.g.n()) bad("vertex out of range");
                (sec == X ? inst.forced_in : inst.forced_out).push_back(int(a));
            }
            continue;
        }
        std::string extra;
        if (ls >> extra) throw std::invalid_argument("line " + std::to_string(ln) + ": trailing text after header");
    }
    inst.normalize();
    return inst;
}

void write_itte(std::ostream& out, const ITTEInstance& src) {
    ITTEInstance inst = src;
    inst.normalize();
    write_graph(out, inst.g);
    out << "X':\n";
    for (int v : inst.forced_in) out << v << '\n';
    out << "Y':\n";
    for (int v : inst.forced_out) out << v << '\n';
    out << "E':\n";
    for (auto [u, v] : inst.hit_edges) out << u << ' ' << v << '\n';
}

}  // namespace wh
