#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wheelhom/clawfree.hpp"
#include "wheelhom/decomposition.hpp"
#include "wheelhom/generators.hpp"
#include "wheelhom/graph.hpp"
#include "wheelhom/hom.hpp"
#include "wheelhom/itte.hpp"
#include "wheelhom/treedec.hpp"
#include "wheelhom/w5.hpp"

using namespace wh;
using json = nlohmann::ordered_json;

namespace {

struct Report {
    json fields = json::object();
    std::vector<std::string> notices;
    std::string payload;  // raw file body for generate/reduce

    void set(const std::string& k, json v) { fields[k] = std::move(v); }
};

bool g_json = false;

std::string plain(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (auto& x : v) {
            if (!s.empty()) s += ' ';
            s += plain(x);
        }
        return s;
    }
    if (v.is_object()) {
        std::string s;
        for (auto& [k, x] : v.items()) {
            if (!s.empty()) s += ' ';
            s += k + "->" + plain(x);
        }
        return s;
    }
    return v.dump();
}

void emit(const Report& r) {
    for (auto& n : r.notices) std::cerr << "notice: " << n << '\n';
    if (g_json) {
        json doc = r.fields;
        if (!r.payload.empty()) doc["payload"] = r.payload;
        if (!r.notices.empty()) doc["notices"] = r.notices;
        std::cout << doc.dump(2) << '\n';
        return;
    }
    if (!r.payload.empty()) {
        std::cout << r.payload;
        for (auto& [k, v] : r.fields.items()) std::cerr << k << ": " << plain(v) << '\n';
        return;
    }
    for (auto& [k, v] : r.fields.items()) std::cout << k << ": " << plain(v) << '\n';
}

template <class F>
auto with_file(const std::string& path, F f) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    int line = 0;
    try {
        return f(in, &line);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    } catch (const GraphError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Graph load_graph(const std::string& p) { return with_file(p, [](std::istream& in, int* l) { return read_graph(in, l); }); }
PartialMap load_map(const std::string& p) {
    return with_file(p, [](std::istream& in, int* l) { return read_partial_map(in, l); });
}
ITTEInstance load_itte(const std::string& p) { return with_file(p, [](std::istream& in, int* l) { return read_itte(in, l); }); }
StripStructure load_strip(const std::string& p) {
    return with_file(p, [](std::istream& in, int* l) { return read_strip(in, l); });
}
CnfInstance load_cnf(const std::string& p) { return with_file(p, [](std::istream& in, int* l) { return read_cnf(in, l); }); }

// whitespace separated vertex ids, '#' starts a comment
std::vector<int> load_set(const std::string& p) {
    return with_file(p, [](std::istream& in, int* l) {
        std::vector<int> out;
        std::string line;
        while (std::getline(in, line)) {
            ++*l;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            std::istringstream ls(line);
            long long v;
            while (ls >> v) {
                if (v < 0) throw std::invalid_argument("line " + std::to_string(*l) + ": negative vertex");
                out.push_back(int(v));
            }
            if (!ls.eof()) throw std::invalid_argument("line " + std::to_string(*l) + ": bad vertex");
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    });
}

json map_json(const FullMap& m) {
    json o = json::object();
    for (size_t v = 0; v < m.size(); ++v) o[std::to_string(v)] = m[v];
    return o;
}

void add_stats(Report& r, const SolveStats& s) {
    r.set("branches", s.branches);
    r.set("quotients", s.quotients);
    r.set("cutsets", s.cutsets);
    r.set("tw_calls", s.tw_calls);
    r.set("oracle_calls", s.oracle_calls);
    r.set("matching_calls", s.matching_calls);
    r.set("claw_checks", s.claw_checks);
    for (auto& n : s.notices) r.notices.push_back(n);
}

std::string solver_path(const SolveStats& s) {
    std::vector<std::string> p;
    if (s.quotients) p.push_back("modular");
    if (s.cutsets) p.push_back("atoms");
    if (s.matching_calls) p.push_back("matching");
    if (s.tw_calls) p.push_back("treewidth");
    if (s.oracle_calls) p.push_back("oracle");
    std::string out;
    for (auto& x : p) out += (out.empty() ? "" : "+") + x;
    return out.empty() ? "direct" : out;
}

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string to_text(const auto& writer) {
    std::ostringstream o;
    writer(o);
    return o.str();
}

Pattern parse_pattern(const std::string& s) {
    if (s == "k3") return Pattern::K3;
    if (s == "k4") return Pattern::K4;
    if (s == "k14") return Pattern::K14;
    if (s == "claw") return Pattern::Claw;
    if (s == "s211") return Pattern::S211;
    if (s == "s333") return Pattern::S333;
    throw std::runtime_error("unknown pattern '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wheel homomorphism toolkit"};
    app.require_subcommand(1);
    unsigned long long seed = 1;
    int threads = 1;
    app.add_flag("--json", g_json, "emit one JSON document");
    app.add_option("--seed", seed, "seed for random instances");
    app.add_option("--threads", threads, "solver threads")->check(CLI::Range(1, 256));

    int exit_code = 0;
    Report rep;

    // solve
    auto* solve = app.add_subcommand("solve", "decide an instance")->require_subcommand(1);
    std::string gpath, mpath, ipath, spath, opath, cls = "s211";
    bool oracle = false;
    // witness file, in the format the verify subcommands read
    auto save = [&](const std::function<void(std::ostream&)>& f) {
        if (opath.empty()) return;
        std::ofstream out(opath);
        if (!out) throw std::runtime_error("cannot write " + opath);
        f(out);
    };
    auto* w5 = solve->add_subcommand("w5ext", "precoloring extension to W5 on a fork-free graph");
    w5->add_option("graph", gpath)->required();
    w5->add_option("--pre", mpath, "precoloring file");
    w5->add_flag("--oracle", oracle, "solve the reduced instance with the exact oracle");
    w5->add_option("--out", opath, "write the witness map here");
    w5->callback([&] {
        Timer t;
        Graph g = load_graph(gpath);
        PartialMap pre = mpath.empty() ? PartialMap{} : load_map(mpath);
        if (auto w = contains_induced(g, PatternId::named(Pattern::S211)))
            throw PreconditionError("graph contains an induced S211", *w);
        auto m = solve_w5ext(g, pre, oracle);
        rep.set("answer", m ? "yes" : "no");
        if (m) {
            if (!verify_map(g, make_target(TargetKind::Wheel, 5), *m, pre)) throw std::logic_error("witness failed verification");
            rep.set("witness", map_json(*m));
            save([&](std::ostream& o) {
                PartialMap full;
                for (size_t v = 0; v < m->size(); ++v) full[int(v)] = (*m)[v];
                write_partial_map(o, full);
            });
        }
        rep.set("path", oracle ? "oracle" : "s211");
        rep.set("time_ms", t.ms());
        exit_code = m ? 0 : 1;
    });

    auto* it = solve->add_subcommand("itte", "triangle transversal with side constraints");
    it->add_option("instance", ipath)->required();
    it->add_option("--class", cls, "s211|clawfree|oracle|treewidth")
        ->check(CLI::IsMember({"s211", "clawfree", "oracle", "treewidth"}));
    it->add_option("--strip", spath, "strip structure for --class clawfree");
    it->add_option("--out", opath, "write the witness set here");
    it->callback([&] {
        Timer t;
        ITTEInstance inst = load_itte(ipath);
        std::optional<ITTESolution> sol;
        SolveStats st;
        std::string path = cls;
        if (cls == "oracle") {
            sol = solve_itte_oracle(inst);
        } else if (cls == "treewidth") {
            auto td = tree_decomposition(inst.g, 62);
            if (!td) throw std::runtime_error("no tree decomposition of width at most 62 found");
            rep.set("width", td->width());
            sol = solve_itte_treewidth(inst, *td);
        } else if (cls == "clawfree") {
            std::optional<StripStructure> s;
            if (!spath.empty()) s = load_strip(spath);
            auto r = solve_itte_clawfree(inst, s);
            sol = r.solution;
            st = r.stats;
            path = solver_path(st);
        } else {
            auto r = solve_itte_s211(inst, threads);
            sol = r.solution;
            st = r.stats;
            path = solver_path(st);
        }
        rep.set("answer", sol ? "yes" : "no");
        if (sol) {
            if (!verify_itte(inst, *sol)) throw std::logic_error("witness failed verification");
            rep.set("witness", *sol);
            save([&](std::ostream& o) {
                for (int v : *sol) o << v << '\n';
            });
        }
        rep.set("path", path);
        if (cls == "s211" || cls == "clawfree") add_stats(rep, st);
        rep.set("time_ms", t.ms());
        exit_code = sol ? 0 : 1;
    });

    // reduce
    auto* reduce = app.add_subcommand("reduce", "instance transformations")->require_subcommand(1);
    auto* rw = reduce->add_subcommand("w5-to-itte", "reduce W5 precoloring extension to an ITTE instance");
    rw->add_option("graph", gpath)->required();
    rw->add_option("--pre", mpath, "precoloring file");
    rw->callback([&] {
        Graph g = load_graph(gpath);
        PartialMap pre = mpath.empty() ? PartialMap{} : load_map(mpath);
        auto r = reduce_w5ext_to_itte(g, pre);
        if (r.trivial_no) {
            rep.set("answer", "no");
            rep.set("reason", "precoloring conflict");
            exit_code = 1;
            return;
        }
        rep.payload = to_text([&](std::ostream& o) { write_itte(o, r.inst); });
    });

    // generate
    auto* gen = app.add_subcommand("generate", "instance generators")->require_subcommand(1);
    int l = 1, count = 1, k = 5, girth = 3, n = 10;
    double density = 0.3;
    bool no_peel = false;
    std::string cpath;
    auto graph_out = [&](const Graph& g) { rep.payload = format_graph(g); };

    auto* gch = gen->add_subcommand("chain", "chain of diamonds");
    gch->add_option("--l", l)->required()->check(CLI::PositiveNumber);
    gch->callback([&] {
        auto c = diamond_chain(l);
        graph_out(c.graph);
        rep.set("x1", c.x1);
        rep.set("x2", c.x2);
    });

    auto* gq = gen->add_subcommand("q-ell", "triangles joined by chains over a cubic graph");
    gq->add_option("--l", l)->required()->check(CLI::PositiveNumber);
    gq->add_option("--graph", gpath, "cubic graph (default: the 16-vertex graph without a perfect matching)");
    gq->callback([&] { graph_out(build_Q_ell(gpath.empty() ? cubic_no_pm_graph() : load_graph(gpath), l)); });

    auto* gob = gen->add_subcommand("obstruction", "claw-free minimal wheel obstructions");
    gob->add_option("--count", count)->check(CLI::PositiveNumber);
    gob->add_option("--k", k);
    gob->callback([&] {
        auto fam = minimal_obstruction_family(count, k);
        std::string body;
        for (size_t i = 0; i < fam.graphs.size(); ++i) {
            body += "# member " + std::to_string(i) + " ell " + std::to_string(fam.ell[i]) + " longest induced cycle " +
                    std::to_string(fam.longest_induced_cycle[i]) + "\n" + format_graph(fam.graphs[i]);
        }
        rep.payload = body;
        rep.set("members", fam.graphs.size());
        rep.set("longest_induced_cycle", fam.longest_induced_cycle);
    });

    auto* gs = gen->add_subcommand("s333", "precolored W5 instance from a claw-free graph of degree at most 4");
    gs->add_option("graph", gpath)->required();
    gs->add_flag("--no-peel", no_peel, "keep vertices of degree at most 2");
    gs->callback([&] {
        auto p = s333_hardness_instance(load_graph(gpath), !no_peel);
        rep.payload = format_graph(p.g) + "# precoloring\n" + to_text([&](std::ostream& o) { write_partial_map(o, p.pre); });
        rep.set("vertices", p.g.n());
    });

    auto* gx = gen->add_subcommand("xg", "graph in X_g from a positive 1-in-3 formula");
    gx->add_option("cnf", cpath)->required();
    gx->add_option("--k", k);
    gx->add_option("--girth", girth);
    gx->callback([&] {
        auto x = xg_hardness_instance(load_cnf(cpath), k, girth);
        graph_out(x.g);
        rep.set("ell", x.ell);
    });

    auto* gp = gen->add_subcommand("pos1in3", "positive 1-in-3 formula from a 1-in-3 formula");
    gp->add_option("cnf", cpath)->required();
    gp->callback([&] { rep.payload = to_text([&](std::ostream& o) { write_cnf(o, pos_1in3_transform(load_cnf(cpath))); }); });

    auto* gnp = gen->add_subcommand("no-pm-cubic", "16-vertex cubic graph without a perfect matching");
    gnp->callback([&] { graph_out(cubic_no_pm_graph()); });

    auto* gr = gen->add_subcommand("random-fork-free", "random graph without an induced S211");
    gr->add_option("--n", n)->check(CLI::Range(1, 100000));
    gr->add_option("--density", density)->check(CLI::Range(0.0, 1.0));
    gr->callback([&] {
        std::mt19937_64 rng(seed);
        graph_out(random_fork_free(n, density, rng));
    });

    // verify
    auto* ver = app.add_subcommand("verify", "check a witness")->require_subcommand(1);
    std::string wpath;
    auto* vh = ver->add_subcommand("hom", "check a map into Wheel(k)");
    vh->add_option("graph", gpath)->required();
    vh->add_option("map", wpath)->required();
    vh->add_option("--pre", mpath, "precoloring the map must respect");
    vh->add_option("--k", k);
    vh->callback([&] {
        Graph g = load_graph(gpath);
        PartialMap pm = load_map(wpath);
        FullMap m(g.n(), -1);
        for (auto [v, c] : pm) {
            if (v >= g.n()) throw std::runtime_error(wpath + ": vertex " + std::to_string(v) + " out of range");
            m[v] = c;
        }
        PartialMap pre = mpath.empty() ? PartialMap{} : load_map(mpath);
        bool ok = std::find(m.begin(), m.end(), -1) == m.end() && verify_map(g, make_target(TargetKind::Wheel, k), m, pre);
        rep.set("valid", ok ? "yes" : "no");
        exit_code = ok ? 0 : 1;
    });

    auto* vi = ver->add_subcommand("itte", "check a triangle transversal");
    vi->add_option("instance", ipath)->required();
    vi->add_option("solution", wpath)->required();
    vi->callback([&] {
        bool ok = verify_itte(load_itte(ipath), load_set(wpath));
        rep.set("valid", ok ? "yes" : "no");
        exit_code = ok ? 0 : 1;
    });

    auto* vs = ver->add_subcommand("strip", "check a strip structure");
    vs->add_option("graph", gpath)->required();
    vs->add_option("strip", spath)->required();
    vs->callback([&] {
        auto c = validate_strip_structure(load_graph(gpath), load_strip(spath));
        rep.set("valid", c.ok ? "yes" : "no");
        if (!c.ok) {
            rep.set("axiom", c.axiom);
            rep.set("detail", c.detail);
        }
        exit_code = c.ok ? 0 : 1;
    });

    // enumerate
    std::vector<std::string> free_of;
    bool print_graphs = false;
    auto* en = app.add_subcommand("enumerate", "connected graphs up to isomorphism");
    en->add_option("--n", n)->required()->check(CLI::Range(1, 9));
    en->add_option("--free", free_of, "forbidden induced patterns (k3 k4 k14 claw s211 s333)")->delimiter(',');
    en->add_flag("--print", print_graphs, "print every graph");
    en->callback([&] {
        std::vector<Pattern> pats;
        for (auto& s : free_of) pats.push_back(parse_pattern(s));
        auto filt = [&](const Graph& g) {
            for (auto p : pats)
                if (!is_free_of(g, p)) return false;
            return true;
        };
        auto gs = enumerate_connected_graphs(n, filt, true);
        rep.set("count", gs.size());
        if (print_graphs)
            for (auto& g : gs) rep.payload += format_graph(g);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what();
        if (!e.witness.empty()) {
            std::cerr << " (witness:";
            for (int v : e.witness) std::cerr << ' ' << v;
            std::cerr << ')';
        }
        std::cerr << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    emit(rep);
    return exit_code;
}
