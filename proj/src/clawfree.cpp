#include "wheelhom/clawfree.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wh {

namespace {

int edge_index(const EdgeList& es, int a, int b) {
    Edge e = norm_edge(a, b);
    auto it = std::lower_bound(es.begin(), es.end(), e);
    if (it == es.end() || *it != e) return -1;
    return static_cast<int>(it - es.begin());
}

// end slot of x on edge e
int end_slot(const Edge& e, int x) { return e.first == x ? 0 : 1; }

}  // namespace

StripCheck validate_strip_structure(const Graph& g, const StripStructure& s) {
    StripCheck r;
    auto fail = [&](const std::string& ax, const std::string& d) {
        r.ok = false;
        r.axiom = ax;
        r.detail = d;
        return r;
    };
    EdgeList de = s.d.edges();
    int m = static_cast<int>(de.size());
    if (static_cast<int>(s.eta.size()) != m || static_cast<int>(s.eta_end.size()) != m)
        return fail("shape", "eta tables do not match the edges of D");
    for (int e = 0; e < m; ++e) {
        std::vector<int> et = s.eta[e];
        std::sort(et.begin(), et.end());
        for (int v : et)
            if (v < 0 || v >= g.n()) return fail("shape", "vertex out of range in eta");
        for (int side = 0; side < 2; ++side) {
            if (s.eta_end[e][side].empty()) return fail("shape", "empty end set on edge " + std::to_string(e));
            for (int v : s.eta_end[e][side])
                if (!std::binary_search(et.begin(), et.end(), v))
                    return fail("shape", "end set not inside eta on edge " + std::to_string(e));
        }
    }
    if (m < 3) return fail("S1", "D has fewer than 3 edges");
    for (int x = 0; x < s.d.n(); ++x)
        if (s.d.degree(x) == 2) return fail("S1", "vertex " + std::to_string(x) + " of D has degree 2");
    std::vector<int> owner(g.n(), -1);
    for (int e = 0; e < m; ++e)
        for (int v : s.eta[e]) {
            if (owner[v] >= 0) return fail("S2", "vertex " + std::to_string(v) + " lies in two eta sets");
            owner[v] = e;
        }
    for (int v = 0; v < g.n(); ++v)
        if (owner[v] < 0) return fail("S2", "vertex " + std::to_string(v) + " is in no eta set");
    // ends[v] = D-vertices x with v in eta(e, x)
    std::vector<std::vector<int>> ends(g.n());
    for (int e = 0; e < m; ++e)
        for (int side = 0; side < 2; ++side) {
            int x = side == 0 ? de[e].first : de[e].second;
            for (int v : s.eta_end[e][side]) ends[v].push_back(x);
        }
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            if (owner[u] == owner[v]) continue;
            bool want = false;
            for (int x : ends[u])
                if (std::find(ends[v].begin(), ends[v].end(), x) != ends[v].end()) want = true;
            if (want != g.adjacent(u, v))
                return fail("S3", "pair " + std::to_string(u) + " " + std::to_string(v) +
                                      (want ? " should be adjacent" : " should not be adjacent"));
        }
    for (int x = 0; x < s.d.n(); ++x) {
        std::vector<int> cl;
        for (int y : s.d.nbrs(x)) {
            int e = edge_index(de, x, y);
            for (int v : s.eta_end[e][end_slot(de[e], x)]) cl.push_back(v);
        }
        for (size_t i = 0; i < cl.size(); ++i)
            for (size_t j = i + 1; j < cl.size(); ++j)
                if (cl[i] != cl[j] && !g.adjacent(cl[i], cl[j]))
                    return fail("S4", "ends at D-vertex " + std::to_string(x) + " do not form a clique");
    }
    return r;
}

StripGraph strip_of_line_graph(const Graph& d) {
    if (d.m() < 3) throw std::invalid_argument("strip_of_line_graph needs at least 3 edges");
    for (int x = 0; x < d.n(); ++x)
        if (d.degree(x) == 2) throw std::invalid_argument("strip_of_line_graph: vertex " + std::to_string(x) + " has degree 2");
    LineGraph lg = line_graph(d);
    StripGraph out;
    out.g = lg.g;
    out.strip.d = d;
    for (int e = 0; e < d.m(); ++e) {
        out.strip.eta.push_back({e});
        out.strip.eta_end.push_back({std::vector<int>{e}, std::vector<int>{e}});
    }
    return out;
}

std::optional<StripStructure> cubic_root_strip(const Graph& g) {
    int n = g.n();
    if (n < 3) return std::nullopt;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != 4) return std::nullopt;
    EdgeList es = g.edges();
    auto tris = triangles(g);
    std::vector<std::vector<int>> triOfEdge(es.size());
    for (size_t t = 0; t < tris.size(); ++t) {
        auto [a, b, c] = tris[t];
        triOfEdge[edge_index(es, a, b)].push_back(static_cast<int>(t));
        triOfEdge[edge_index(es, a, c)].push_back(static_cast<int>(t));
        triOfEdge[edge_index(es, b, c)].push_back(static_cast<int>(t));
    }
    std::vector<char> covered(es.size(), 0);
    std::vector<int> used(n, 0), chosen;
    long long budget = 2'000'000;
    std::function<bool(size_t)> rec = [&](size_t from) -> bool {
        if (--budget < 0) return false;
        while (from < es.size() && covered[from]) ++from;
        if (from == es.size()) return true;
        for (int t : triOfEdge[from]) {
            auto [a, b, c] = tris[t];
            int e1 = edge_index(es, a, b), e2 = edge_index(es, a, c), e3 = edge_index(es, b, c);
            if (covered[e1] || covered[e2] || covered[e3]) continue;
            if (used[a] == 2 || used[b] == 2 || used[c] == 2) continue;
            covered[e1] = covered[e2] = covered[e3] = 1;
            ++used[a], ++used[b], ++used[c];
            chosen.push_back(t);
            if (rec(from + 1)) return true;
            chosen.pop_back();
            --used[a], --used[b], --used[c];
            covered[e1] = covered[e2] = covered[e3] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    std::vector<std::vector<int>> at(n);
    for (size_t i = 0; i < chosen.size(); ++i)
        for (int v : tris[chosen[i]]) at[v].push_back(static_cast<int>(i));
    EdgeList dEdges;
    std::map<Edge, int> vertexOf;
    for (int v = 0; v < n; ++v) {
        if (at[v].size() != 2) return std::nullopt;
        Edge e = norm_edge(at[v][0], at[v][1]);
        if (vertexOf.count(e)) return std::nullopt;
        vertexOf[e] = v;
        dEdges.push_back(e);
    }
    StripStructure s;
    s.d = build_graph(static_cast<int>(chosen.size()), dEdges);
    for (auto e : s.d.edges()) {
        int v = vertexOf[e];
        s.eta.push_back({v});
        s.eta_end.push_back({std::vector<int>{v}, std::vector<int>{v}});
    }
    if (!validate_strip_structure(g, s).ok) return std::nullopt;
    return s;
}

StripStructure read_strip(std::istream& in, int* line_no) {
    int local = 0;
    int& ln = line_no ? *line_no : local;
    StripStructure s;
    s.d = read_graph(in, &ln);
    EdgeList de = s.d.edges();
    s.eta.assign(de.size(), {});
    s.eta_end.assign(de.size(), {});
    std::string line;
    auto bad = [&](const std::string& what) { throw std::invalid_argument("line " + std::to_string(ln) + ": " + what); };
    while (std::getline(in, line)) {
        ++ln;
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        auto colon = line.find(':');
        std::istringstream hs(line.substr(0, colon == std::string::npos ? line.size() : colon));
        std::string tok;
        if (!(hs >> tok)) continue;
        if (colon == std::string::npos) bad("expected 'eta x y:' or 'end x y z:'");
        long long x, y, z = -1;
        if (!(hs >> x >> y)) bad("expected D-edge endpoints");
        if (tok == "end" && !(hs >> z)) bad("expected the end vertex");
        std::string extra;
        if (hs >> extra) bad("trailing text before ':'");
        if (tok != "eta" && tok != "end") bad("unknown record '" + tok + "'");
        if (x < 0 || y < 0 || x >= s.d.n() || y >= s.d.n()) bad("D vertex out of range");
        int e = edge_index(de, int(x), int(y));
        if (e < 0) bad("not an edge of D");
        std::vector<int> vs;
        std::istringstream rs(line.substr(colon + 1));
        long long v;
        while (rs >> v) vs.push_back(int(v));
        if (!rs.eof()) bad("bad vertex list");
        if (tok == "eta") s.eta[e] = vs;
        else {
            if (z != de[e].first && z != de[e].second) bad("end vertex is not an endpoint of the edge");
            s.eta_end[e][end_slot(de[e], int(z))] = vs;
        }
    }
    return s;
}

void write_strip(std::ostream& out, const StripStructure& s) {
    write_graph(out, s.d);
    EdgeList de = s.d.edges();
    for (size_t e = 0; e < de.size(); ++e) {
        auto list = [&](const std::vector<int>& vs) {
            for (int v : vs) out << ' ' << v;
            out << '\n';
        };
        out << "eta " << de[e].first << ' ' << de[e].second << ':';
        list(s.eta[e]);
        out << "end " << de[e].first << ' ' << de[e].second << ' ' << de[e].first << ':';
        list(s.eta_end[e][0]);
        out << "end " << de[e].first << ' ' << de[e].second << ' ' << de[e].second << ':';
        list(s.eta_end[e][1]);
    }
}

// ---- maximum weight matching (primal-dual blossom algorithm, integer weights) ----

namespace {

class Blossom {
public:
    Blossom(int n, const std::vector<std::array<long long, 3>>& edges) : n_(n), edges_(edges) {}

    std::vector<int> run() {
        int ne = static_cast<int>(edges_.size());
        if (ne == 0) return std::vector<int>(n_, -1);
        long long maxw = 0;
        for (auto& e : edges_) maxw = std::max(maxw, e[2]);
        endpoint_.resize(2 * ne);
        for (int k = 0; k < ne; ++k) {
            endpoint_[2 * k] = int(edges_[k][0]);
            endpoint_[2 * k + 1] = int(edges_[k][1]);
        }
        neighbend_.assign(n_, {});
        for (int k = 0; k < ne; ++k) {
            neighbend_[edges_[k][0]].push_back(2 * k + 1);
            neighbend_[edges_[k][1]].push_back(2 * k);
        }
        mate_.assign(n_, -1);
        label_.assign(2 * n_, 0);
        labelend_.assign(2 * n_, -1);
        inblossom_.resize(n_);
        for (int v = 0; v < n_; ++v) inblossom_[v] = v;
        blossomparent_.assign(2 * n_, -1);
        blossomchilds_.assign(2 * n_, {});
        blossombase_.assign(2 * n_, -1);
        for (int v = 0; v < n_; ++v) blossombase_[v] = v;
        blossomendps_.assign(2 * n_, {});
        bestedge_.assign(2 * n_, -1);
        blossombestedges_.assign(2 * n_, {});
        hasbest_.assign(2 * n_, 0);
        unused_.clear();
        for (int b = n_; b < 2 * n_; ++b) unused_.push_back(b);
        dualvar_.assign(2 * n_, 0);
        for (int v = 0; v < n_; ++v) dualvar_[v] = maxw;
        allowedge_.assign(ne, 0);

        for (int t = 0; t < n_; ++t) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; ++b) {
                blossombestedges_[b].clear();
                hasbest_[b] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < n_; ++v)
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[v]) {
                        int k = p / 2, w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        long long kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[k] = 1;
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) add_blossom(base, k);
                                else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                        }
                    }
                }
                if (augmented) break;
                int deltatype = 1, deltaedge = -1, deltablossom = -1;
                long long delta = dualvar_[0];
                for (int v = 1; v < n_; ++v) delta = std::min(delta, dualvar_[v]);
                for (int v = 0; v < n_; ++v)
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        long long d = slack(bestedge_[v]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                for (int b = 0; b < 2 * n_; ++b)
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        long long d = slack(bestedge_[b]) / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                for (int b = n_; b < 2 * n_; ++b)
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 && dualvar_[b] < delta) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                for (int v = 0; v < n_; ++v) {
                    int l = label_[inblossom_[v]];
                    if (l == 1) dualvar_[v] -= delta;
                    else if (l == 2) dualvar_[v] += delta;
                }
                for (int b = n_; b < 2 * n_; ++b)
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) dualvar_[b] += delta;
                        else if (label_[b] == 2) dualvar_[b] -= delta;
                    }
                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[deltaedge] = 1;
                    int i = int(edges_[deltaedge][0]), j = int(edges_[deltaedge][1]);
                    if (label_[inblossom_[i]] == 0) std::swap(i, j);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = 1;
                    queue_.push_back(int(edges_[deltaedge][0]));
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (int b = n_; b < 2 * n_; ++b)
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
                    expand_blossom(b, true);
        }
        std::vector<int> out(n_, -1);
        for (int v = 0; v < n_; ++v)
            if (mate_[v] >= 0) out[v] = endpoint_[mate_[v]];
        return out;
    }

private:
    int n_;
    std::vector<std::array<long long, 3>> edges_;
    std::vector<int> endpoint_, mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_, unused_,
        queue_;
    std::vector<std::vector<int>> neighbend_, blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<char> hasbest_, allowedge_;
    std::vector<long long> dualvar_;

    long long slack(int k) const {
        return dualvar_[edges_[k][0]] + dualvar_[edges_[k][1]] - 2 * edges_[k][2];
    }

    void leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) leaves(t, out);
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            int base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = int(edges_[k][0]), w = int(edges_[k][1]);
        int bb = inblossom_[base], bv = inblossom_[v], bw = inblossom_[w];
        int b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        auto& path = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        std::vector<int> lv;
        leaves(b, lv);
        for (int x : lv) {
            if (label_[inblossom_[x]] == 2) queue_.push_back(x);
            inblossom_[x] = b;
        }
        std::vector<int> bestedgeto(2 * n_, -1);
        for (int sub : path) {
            std::vector<int> cand;
            if (!hasbest_[sub]) {
                std::vector<int> sl;
                leaves(sub, sl);
                for (int x : sl)
                    for (int p : neighbend_[x]) cand.push_back(p / 2);
            } else {
                cand = blossombestedges_[sub];
            }
            for (int kk : cand) {
                int i = int(edges_[kk][0]), j = int(edges_[kk][1]);
                if (inblossom_[j] == b) std::swap(i, j);
                int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
                    bestedgeto[bj] = kk;
            }
            blossombestedges_[sub].clear();
            hasbest_[sub] = 0;
            bestedge_[sub] = -1;
        }
        blossombestedges_[b].clear();
        for (int kk : bestedgeto)
            if (kk != -1) blossombestedges_[b].push_back(kk);
        hasbest_[b] = 1;
        bestedge_[b] = -1;
        for (int kk : blossombestedges_[b])
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }

    void expand_blossom(int b, bool endstage) {
        std::vector<int> childs = blossomchilds_[b];
        for (int s : childs) {
            blossomparent_[s] = -1;
            if (s < n_) inblossom_[s] = s;
            else if (endstage && dualvar_[s] == 0) expand_blossom(s, endstage);
            else {
                std::vector<int> lv;
                leaves(s, lv);
                for (int x : lv) inblossom_[x] = s;
            }
        }
        if (!endstage && label_[b] == 2) {
            int len = static_cast<int>(childs.size());
            auto& endps = blossomendps_[b];
            auto at = [&](int j) { return childs[((j % len) + len) % len]; };
            auto ep = [&](int j) { return endps[((j % len) + len) % len]; };
            int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[ep(j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[ep(j - endptrick) / 2] = 1;
                j += jstep;
                p = ep(j - endptrick) ^ endptrick;
                allowedge_[p / 2] = 1;
                j += jstep;
            }
            int bv = at(j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(j) != entrychild) {
                bv = at(j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> lv;
                leaves(bv, lv);
                int v = -1;
                for (int x : lv)
                    if (label_[x] != 0) {
                        v = x;
                        break;
                    }
                if (v != -1) {
                    label_[v] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(v, 2, labelend_[v]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        hasbest_[b] = 0;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= n_) augment_blossom(t, v);
        auto& childs = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        int len = static_cast<int>(childs.size());
        auto at = [&](int j) { return childs[((j % len) + len) % len]; };
        auto ep = [&](int j) { return endps[((j % len) + len) % len]; };
        int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i, jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = at(j);
            int p = ep(j - endptrick) ^ endptrick;
            if (t >= n_) augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = at(j);
            if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
    }

    void augment_matching(int k) {
        int v = int(edges_[k][0]), w = int(edges_[k][1]);
        for (auto [s, p] : {std::pair<int, int>{v, 2 * k + 1}, std::pair<int, int>{w, 2 * k}}) {
            while (true) {
                int bs = inblossom_[s];
                if (bs >= n_) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                int t = endpoint_[labelend_[bs]];
                int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= n_) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }
};

}  // namespace

std::vector<int> max_weight_matching(const Graph& g, const std::vector<long long>& w) {
    EdgeList es = g.edges();
    if (w.size() != es.size()) throw std::invalid_argument("weight count does not match edge count");
    std::vector<std::array<long long, 3>> edges;
    for (size_t i = 0; i < es.size(); ++i) {
        if (w[i] < 0) throw std::invalid_argument("negative edge weight");
        edges.push_back({es[i].first, es[i].second, w[i]});
    }
    Blossom b(g.n(), edges);
    auto mate = b.run();
    for (int v = 0; v < g.n(); ++v)
        if (mate[v] >= 0 && (mate[mate[v]] != v || !g.adjacent(v, mate[v])))
            throw std::logic_error("matching solver returned an inconsistent matching");
    return mate;
}

long long matching_weight(const Graph& g, const std::vector<long long>& w, const std::vector<int>& mate) {
    EdgeList es = g.edges();
    long long s = 0;
    for (int v = 0; v < g.n(); ++v)
        if (mate[v] > v) s += w[edge_index(es, v, mate[v])];
    return s;
}

long long max_weight_matching_dp(const Graph& g, const std::vector<long long>& w) {
    int n = g.n();
    if (n > 20) throw std::invalid_argument("max_weight_matching_dp supports at most 20 vertices");
    EdgeList es = g.edges();
    std::vector<std::vector<long long>> wt(n, std::vector<long long>(n, -1));
    for (size_t i = 0; i < es.size(); ++i) wt[es[i].first][es[i].second] = wt[es[i].second][es[i].first] = w[i];
    std::vector<long long> best(std::size_t(1) << n, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int i = __builtin_ctz(mask);
        std::uint32_t rest = mask & ~(1u << i);
        long long b = best[rest];
        for (int j = i + 1; j < n; ++j)
            if ((rest >> j & 1) && wt[i][j] >= 0) b = std::max(b, wt[i][j] + best[rest & ~(1u << j)]);
        best[mask] = b;
    }
    return best[(std::size_t(1) << n) - 1];
}

MWMStarResult solve_mwm_star(const MWMStarInstance& inst) {
    const Graph& g = inst.g;
    int n = g.n();
    EdgeList es = g.edges();
    if (inst.w.size() != es.size()) throw std::invalid_argument("weight count does not match edge count");
    // G': copies v and v+n, plus v--v+n for every v outside U
    std::map<Edge, long long> wp;
    for (size_t i = 0; i < es.size(); ++i) {
        if (inst.w[i] < 0) throw std::invalid_argument("negative edge weight");
        wp[es[i]] = inst.w[i];
        wp[{es[i].first + n, es[i].second + n}] = inst.w[i];
    }
    std::vector<char> inU(n, 0);
    for (int u : inst.cover) {
        if (u < 0 || u >= n) throw std::invalid_argument("cover vertex out of range");
        inU[u] = 1;
    }
    for (int u = 0; u < n; ++u)
        if (!inU[u]) wp[{u, u + n}] = 0;
    EdgeList ge;
    for (auto& [e, _] : wp) ge.push_back(e);
    Graph gp = build_graph(2 * n, ge);
    long long p = 0;
    for (auto& [e, x] : wp) p = std::max(p, x);
    long long m = p * static_cast<long long>(wp.size()) + 1;
    std::vector<long long> w2;
    for (auto e : gp.edges()) w2.push_back(wp[e] + m);
    long long kp = static_cast<long long>(n) * m + 2 * inst.k;
    auto mate = max_weight_matching(gp, w2);
    long long got = matching_weight(gp, w2, mate);
    MWMStarResult r;
    r.yes = got >= kp;
    if (!r.yes) return r;
    for (int v = 0; v < 2 * n; ++v)
        if (mate[v] < 0) throw std::logic_error("shifted matching reached the target but is not perfect");
    long long w0 = 0, w1 = 0;
    for (int v = 0; v < n; ++v)
        if (mate[v] > v && mate[v] < n) w0 += wp[{v, mate[v]}];
    for (int v = n; v < 2 * n; ++v)
        if (mate[v] > v) w1 += wp[{v, mate[v]}];
    int off = w0 >= inst.k ? 0 : n;
    if (off == n && w1 < inst.k) throw std::logic_error("neither copy reaches the target weight");
    for (int v = 0; v < n; ++v) {
        int u = mate[v + off] - off;
        if (u > v && u < n) r.matching.emplace_back(v, u);
    }
    return r;
}

MWMStarInstance read_mwm_star(std::istream& in, int* line_no) {
    int local = 0;
    int& ln = line_no ? *line_no : local;
    MWMStarInstance inst;
    inst.g = read_graph(in, &ln);
    EdgeList es = inst.g.edges();
    inst.w.assign(es.size(), 0);
    std::string line;
    auto bad = [&](const std::string& what) { throw std::invalid_argument("line " + std::to_string(ln) + ": " + what); };
    while (std::getline(in, line)) {
        ++ln;
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "U:") {
            long long v;
            while (ls >> v) {
                if (v < 0 || v >= inst.g.n()) bad("cover vertex out of range");
                inst.cover.push_back(int(v));
            }
            if (!ls.eof()) bad("bad vertex list");
        } else if (tok == "w:") {
            long long u, v, x;
            std::string extra;
            if (!(ls >> u >> v >> x) || (ls >> extra)) bad("expected 'w: u v weight'");
            if (u < 0 || v < 0 || u >= inst.g.n() || v >= inst.g.n()) bad("vertex out of range");
            int e = edge_index(es, int(u), int(v));
            if (e < 0) bad("weight on a non-edge");
            if (x < 0) bad("negative weight");
            inst.w[e] = x;
        } else if (tok == "k:") {
            std::string extra;
            if (!(ls >> inst.k) || (ls >> extra)) bad("expected 'k: value'");
        } else {
            bad("unknown record '" + tok + "'");
        }
    }
    std::sort(inst.cover.begin(), inst.cover.end());
    inst.cover.erase(std::unique(inst.cover.begin(), inst.cover.end()), inst.cover.end());
    return inst;
}

void write_mwm_star(std::ostream& out, const MWMStarInstance& inst) {
    write_graph(out, inst.g);
    out << "U:";
    for (int u : inst.cover) out << ' ' << u;
    out << '\n';
    EdgeList es = inst.g.edges();
    for (size_t i = 0; i < es.size(); ++i) out << "w: " << es[i].first << ' ' << es[i].second << ' ' << inst.w[i] << '\n';
    out << "k: " << inst.k << '\n';
}

// ---- ITTE -> MWM* ----

namespace {

struct EdgeData {
    int x = -1, y = -1;           // D endpoints (x < y)
    int vxy = -1, vyx = -1;       // G vertices
    std::vector<int> eta;         // sorted G vertices
    std::vector<std::vector<int>> allowed;   // each A sorted
    std::vector<ITTESolution> sol;            // G indices
    bool inE = false;             // empty set not allowed
    int find(std::vector<int> a) const {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        for (size_t i = 0; i < allowed.size(); ++i)
            if (allowed[i] == a) return static_cast<int>(i);
        return -1;
    }
};

struct Prep {
    bool applicable = true;
    bool no = false;
    std::string reason;
    ITTEInstance reduced;
    std::vector<EdgeData> ed;
    std::map<Edge, long long> dprime;  // D' edges with weights
    int nd = 0;
};

bool strip_is_cubic_singleton(const StripStructure& s) {
    for (int x = 0; x < s.d.n(); ++x)
        if (s.d.degree(x) != 3) return false;
    for (auto& ends : s.eta_end)
        if (ends[0].size() != 1 || ends[1].size() != 1) return false;
    return true;
}

Prep prepare(const ITTEInstance& inst, const StripStructure& s, SolveStats& st) {
    Prep pr;
    if (!strip_is_cubic_singleton(s)) {
        pr.applicable = false;
        return pr;
    }
    const Graph& g = inst.g;
    int n = g.n();
    const Graph& d = s.d;
    EdgeList de = d.edges();
    pr.nd = d.n();
    std::vector<char> inX(n, 0), inY(n, 0);
    for (int v : inst.forced_in) inX[v] = 1;
    for (int v : inst.forced_out) inY[v] = 1;
    std::set<Edge> hit(inst.hit_edges.begin(), inst.hit_edges.end());
    auto vAt = [&](int x, int y) {
        int e = edge_index(de, x, y);
        return s.eta_end[e][end_slot(de[e], x)][0];
    };

    // Reduction Rule 1
    for (int x = 0; x < d.n(); ++x) {
        const auto& nb = d.nbrs(x);
        std::vector<Edge> in;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                Edge e = norm_edge(vAt(x, nb[i]), vAt(x, nb[j]));
                if (hit.count(e)) in.push_back(e);
            }
        if (in.size() == 3) {
            pr.no = true;
            pr.reason = "Reduction Rule 1: all three edges at D-vertex " + std::to_string(x) + " are in E'";
            return pr;
        }
        if (in.size() == 2) {
            int c = (in[0].first == in[1].first || in[0].first == in[1].second) ? in[0].first : in[0].second;
            inX[c] = 1;
            hit.erase(in[0]);
            hit.erase(in[1]);
        }
    }
    ITTEInstance& red = pr.reduced;
    red.g = g;
    for (int v = 0; v < n; ++v) {
        if (inX[v]) red.forced_in.push_back(v);
        if (inY[v]) red.forced_out.push_back(v);
    }
    red.hit_edges.assign(hit.begin(), hit.end());
    red.normalize();
    for (int v = 0; v < n; ++v)
        if (inX[v] && inY[v]) {
            pr.no = true;
            pr.reason = "vertex " + std::to_string(v) + " is forced both in and out";
            return pr;
        }

    // A(xy) per edge of D
    pr.ed.resize(de.size());
    for (size_t e = 0; e < de.size(); ++e) {
        EdgeData& E = pr.ed[e];
        E.x = de[e].first;
        E.y = de[e].second;
        E.vxy = s.eta_end[e][0][0];
        E.vyx = s.eta_end[e][1][0];
        E.eta = s.eta[e];
        std::sort(E.eta.begin(), E.eta.end());
        std::vector<int> I;
        for (int v : {E.vxy, E.vyx})
            if (!inY[v] && std::find(I.begin(), I.end(), v) == I.end()) I.push_back(v);
        ITTEInstance base = restrict_instance(red, E.eta);
        auto loc = [&](int v) {
            return static_cast<int>(std::lower_bound(E.eta.begin(), E.eta.end(), v) - E.eta.begin());
        };
        for (int mask = 0; mask < (1 << I.size()); ++mask) {
            std::vector<int> A, out;
            for (size_t i = 0; i < I.size(); ++i) (mask >> i & 1 ? A : out).push_back(I[i]);
            bool ok = true;
            for (int v : I)
                if (inX[v] && !(std::find(A.begin(), A.end(), v) != A.end())) ok = false;
            if (!ok) continue;
            ITTEInstance sub = base;
            for (int v : A) sub.forced_in.push_back(loc(v));
            for (int v : out) sub.forced_out.push_back(loc(v));
            sub.normalize();
            auto xs = solve_itte_small(sub, st);
            if (!xs) continue;
            std::sort(A.begin(), A.end());
            ITTESolution gx;
            for (int v : *xs) gx.push_back(E.eta[v]);
            E.allowed.push_back(A);
            E.sol.push_back(gx);
        }
        if (E.allowed.empty()) {
            pr.no = true;
            pr.reason = "Reduction Rule 2: no admissible boundary set on D-edge " + std::to_string(E.x) + " " +
                        std::to_string(E.y);
            return pr;
        }
        E.inE = E.find({}) < 0;
    }

    // D'
    int nd = d.n();
    std::set<Edge> banned;
    for (int x = 0; x < nd; ++x) {
        const auto& nb = d.nbrs(x);
        for (int i = 0; i < 3; ++i) {
            int y = nb[i], y1 = nb[(i + 1) % 3], y2 = nb[(i + 2) % 3];
            if (hit.count(norm_edge(vAt(x, y1), vAt(x, y2)))) {
                int e = edge_index(de, x, y);
                banned.insert(norm_edge(x, y));
                banned.insert(norm_edge(x, nd + e));
            }
        }
    }
    for (size_t e = 0; e < de.size(); ++e) {
        const EdgeData& E = pr.ed[e];
        long long wt = E.inE ? 1 : 0;
        int t = nd + static_cast<int>(e);
        auto add = [&](int a, int b) {
            Edge k = norm_edge(a, b);
            if (!banned.count(k)) pr.dprime[k] = wt;
        };
        if (E.find({E.vxy, E.vyx}) >= 0) add(E.x, E.y);
        if (E.vxy != E.vyx) {
            if (E.find({E.vxy}) >= 0) add(E.x, t);
            if (E.find({E.vyx}) >= 0) add(E.y, t);
        }
    }
    return pr;
}

MWMStarInstance mwm_of(const Prep& pr, int total) {
    MWMStarInstance m;
    EdgeList es;
    for (auto& [e, w] : pr.dprime) es.push_back(e);
    m.g = build_graph(total, es);
    for (auto e : m.g.edges()) m.w.push_back(pr.dprime.at(e));
    for (int x = 0; x < pr.nd; ++x) m.cover.push_back(x);
    for (auto& E : pr.ed) m.k += E.inE ? 1 : 0;
    return m;
}

// decide via MWM*, contracting isolated D-triangles whose edges are collapsed
std::optional<ITTESolution> matching_route(const ITTEInstance& inst, const StripStructure& s, const Prep& pr,
                                           SolveStats& st) {
    ++st.matching_calls;
    const Graph& d = s.d;
    int nd = d.n();
    EdgeList de = d.edges();
    int total = nd + static_cast<int>(de.size());

    auto dtris = triangles(d);
    std::map<Edge, int> triCount;
    for (auto t : dtris) {
        ++triCount[norm_edge(t[0], t[1])];
        ++triCount[norm_edge(t[0], t[2])];
        ++triCount[norm_edge(t[1], t[2])];
    }
    std::vector<int> image(total);
    for (int v = 0; v < total; ++v) image[v] = v;
    std::vector<std::array<int, 3>> contracted;
    std::vector<int> triOf(total, -1);
    for (auto t : dtris) {
        bool iso = true, collapsed = true;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                if (triCount[norm_edge(t[i], t[j])] != 1) iso = false;
                const EdgeData& E = pr.ed[edge_index(de, t[i], t[j])];
                if (E.vxy != E.vyx) collapsed = false;
            }
        if (!iso || !collapsed) continue;
        int id = static_cast<int>(contracted.size());
        contracted.push_back(t);
        for (int v : t) triOf[v] = id;
    }
    // contracted vertices get ids total + id; then compress
    std::vector<int> newId(total + contracted.size(), -1);
    int h = 0;
    for (int v = 0; v < total; ++v)
        if (triOf[v] < 0) newId[v] = h++;
    for (size_t i = 0; i < contracted.size(); ++i) newId[total + i] = h++;
    auto img = [&](int v) { return triOf[v] >= 0 ? newId[total + triOf[v]] : newId[v]; };
    auto opposite = [&](int v) {
        const auto& t = contracted[triOf[v]];
        std::vector<int> o;
        for (int u : t)
            if (u != v) o.push_back(u);
        return norm_edge(o[0], o[1]);
    };

    std::map<Edge, std::pair<long long, Edge>> hEdges;  // H edge -> (weight, realising D' edge)
    for (auto& [e, w] : pr.dprime) {
        int a = e.first, b = e.second;
        if (triOf[a] >= 0 && triOf[a] == triOf[b]) continue;
        long long wt = w;
        bool ok = true;
        for (int v : {a, b})
            if (triOf[v] >= 0) {
                auto it = pr.dprime.find(opposite(v));
                if (it == pr.dprime.end()) ok = false;
                else wt += it->second;
            }
        if (!ok) continue;
        Edge he = norm_edge(img(a), img(b));
        auto it = hEdges.find(he);
        if (it == hEdges.end() || it->second.first < wt) hEdges[he] = {wt, e};
    }
    MWMStarInstance mw;
    EdgeList hes;
    for (auto& [e, _] : hEdges) hes.push_back(e);
    mw.g = build_graph(h, hes);
    for (auto e : mw.g.edges()) mw.w.push_back(hEdges[e].first);
    for (int x = 0; x < nd; ++x)
        if (triOf[x] < 0) mw.cover.push_back(newId[x]);
    for (size_t i = 0; i < contracted.size(); ++i) mw.cover.push_back(newId[total + i]);
    for (auto& E : pr.ed) mw.k += E.inE ? 1 : 0;

    auto res = solve_mwm_star(mw);
    if (!res.yes) return std::nullopt;

    std::vector<int> mate(total, -1);
    auto pairUp = [&](Edge e) {
        if (mate[e.first] >= 0 || mate[e.second] >= 0) throw std::logic_error("expanded matching overlaps");
        mate[e.first] = e.second;
        mate[e.second] = e.first;
    };
    for (auto he : res.matching) {
        Edge e = hEdges[norm_edge(he.first, he.second)].second;
        pairUp(e);
        for (int v : {e.first, e.second})
            if (triOf[v] >= 0) pairUp(opposite(v));
    }
    ITTESolution x;
    for (size_t ei = 0; ei < de.size(); ++ei) {
        const EdgeData& E = pr.ed[ei];
        int t = nd + static_cast<int>(ei);
        std::vector<int> A;
        if (mate[E.x] == E.y) A = {E.vxy, E.vyx};
        else if (mate[E.x] == t) A = {E.vxy};
        else if (mate[E.y] == t) A = {E.vyx};
        int idx = E.find(A);
        if (idx < 0) {
            st.note("matching lift hit a boundary set outside A(xy); solved without the matching route");
            return solve_itte_small(inst, st);
        }
        x.insert(x.end(), E.sol[idx].begin(), E.sol[idx].end());
    }
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    if (!verify_itte(inst, x)) {
        st.note("matching lift failed verification; solved without the matching route");
        return solve_itte_small(inst, st);
    }
    return x;
}

std::optional<ITTESolution> run_strip(const ITTEInstance& inst, const StripStructure& s, SolveStats& st,
                                      bool& applicable) {
    Prep pr = prepare(inst, s, st);
    applicable = pr.applicable;
    if (!pr.applicable || pr.no) return std::nullopt;
    return matching_route(inst, s, pr, st);
}

}  // namespace

MatchingReduction reduce_itte_to_mwm_star(const ITTEInstance& inst, const StripStructure& s) {
    check_instance(inst);
    auto chk = validate_strip_structure(inst.g, s);
    if (!chk.ok) throw std::invalid_argument("invalid strip structure (" + chk.axiom + "): " + chk.detail);
    if (!strip_is_cubic_singleton(s))
        throw std::invalid_argument("the matching reduction needs a cubic D with single-vertex end sets");
    SolveStats st;
    Prep pr = prepare(inst, s, st);
    MatchingReduction r;
    r.no = pr.no;
    r.reason = pr.reason;
    r.reduced = pr.reduced;
    if (!pr.no) r.mwm = mwm_of(pr, pr.nd + s.d.m());
    return r;
}

std::optional<ITTESolution> solve_itte_clawfree_unchecked(const ITTEInstance& inst, const StripStructure* strip,
                                                          SolveStats& st) {
    {
        std::vector<int> c;
        std::set_intersection(inst.forced_in.begin(), inst.forced_in.end(), inst.forced_out.begin(),
                              inst.forced_out.end(), std::back_inserter(c));
        if (!c.empty()) return std::nullopt;
    }
    if (has_k4(inst.g)) return std::nullopt;
    if (strip) {
        auto chk = validate_strip_structure(inst.g, *strip);
        if (!chk.ok) throw std::invalid_argument("invalid strip structure (" + chk.axiom + "): " + chk.detail);
        bool applicable = false;
        auto x = run_strip(inst, *strip, st, applicable);
        if (applicable) return x;
        st.note("supplied strip structure is not cubic with single-vertex ends; ignored");
    }
    auto atom = [&](const ITTEInstance& a) -> std::optional<ITTESolution> {
        if (has_k4(a.g)) return std::nullopt;
        if (a.g.max_degree() > 5) st.note("claw-free K4-free atom with a vertex of degree above 5");
        if (auto s = cubic_root_strip(a.g)) {
            bool applicable = false;
            auto x = run_strip(a, *s, st, applicable);
            if (applicable) return x;
        }
        return solve_itte_small(a, st);
    };
    return solve_itte_atoms(inst, atom, &st);
}

ITTEResult solve_itte_clawfree(const ITTEInstance& inst, const std::optional<StripStructure>& strip) {
    check_instance(inst);
    if (auto w = contains_induced(inst.g, PatternId::named(Pattern::Claw)))
        throw PreconditionError("graph contains an induced claw", *w);
    ITTEInstance in = inst;
    in.normalize();
    ITTEResult r;
    r.solution = solve_itte_clawfree_unchecked(in, strip ? &*strip : nullptr, r.stats);
    if (r.solution && !verify_itte(in, *r.solution))
        throw std::logic_error("claw-free solver produced an invalid solution");
    return r;
}

}  // namespace wh
