#include <random>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wheelhom/clawfree.hpp"
#include "wheelhom/decomposition.hpp"
#include "wheelhom/generators.hpp"
#include "wheelhom/graph.hpp"
#include "wheelhom/hom.hpp"
#include "wheelhom/itte.hpp"
#include "wheelhom/treedec.hpp"
#include "wheelhom/w5.hpp"

namespace py = pybind11;
using namespace wh;

namespace {

Pattern pattern_of(const std::string& name) {
    static const std::map<std::string, Pattern> names = {
        {"k3", Pattern::K3}, {"k4", Pattern::K4}, {"k14", Pattern::K14},
        {"claw", Pattern::Claw}, {"s211", Pattern::S211}, {"fork", Pattern::S211}, {"s333", Pattern::S333}};
    auto it = names.find(name);
    if (it == names.end()) throw py::value_error("unknown pattern " + name);
    return it->second;
}

CnfInstance cnf_of(int nvars, const std::vector<std::array<int, 3>>& clauses) {
    CnfInstance f;
    f.nvars = nvars;
    for (auto& c : clauses) {
        std::array<Literal, 3> l;
        for (int i = 0; i < 3; ++i) {
            if (c[i] == 0 || std::abs(c[i]) > nvars) throw py::value_error("literal out of range");
            l[i] = {std::abs(c[i]) - 1, c[i] > 0};
        }
        f.clauses.push_back(l);
    }
    return f;
}

std::vector<std::array<int, 3>> clauses_of(const CnfInstance& f) {
    std::vector<std::array<int, 3>> out;
    for (auto& c : f.clauses) {
        std::array<int, 3> x;
        for (int i = 0; i < 3; ++i) x[i] = (c[i].var + 1) * (c[i].positive ? 1 : -1);
        out.push_back(x);
    }
    return out;
}

ITTEInstance make_instance(const Graph& g, std::vector<int> xin, std::vector<int> yout, EdgeList hit) {
    ITTEInstance inst{g, std::move(xin), std::move(yout), std::move(hit)};
    inst.normalize();
    check_instance(inst);
    return inst;
}

py::object solve_itte(const ITTEInstance& inst, const std::string& method, int threads) {
    std::optional<ITTESolution> sol;
    if (method == "oracle") {
        sol = solve_itte_oracle(inst);
    } else if (method == "treewidth") {
        auto td = tree_decomposition(inst.g, 62);
        if (!td) throw py::value_error("no tree decomposition of width at most 62 found");
        sol = solve_itte_treewidth(inst, *td);
    } else if (method == "clawfree") {
        sol = solve_itte_clawfree(inst).solution;
    } else if (method == "s211") {
        py::gil_scoped_release release;
        sol = solve_itte_s211(inst, threads).solution;
    } else {
        throw py::value_error("method must be s211, clawfree, treewidth or oracle");
    }
    if (!sol) return py::none();
    return py::cast(*sol);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "wheel homomorphisms, triangle transversals and their decomposition solvers";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init([](int n, const EdgeList& edges) { return build_graph(n, edges); }), py::arg("n"),
             py::arg("edges") = EdgeList{})
        .def_static("parse", &parse_graph)
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("m", &Graph::m)
        .def("edges", &Graph::edges)
        .def("neighbours", &Graph::nbrs)
        .def("degree", &Graph::degree)
        .def("adjacent", &Graph::adjacent)
        .def("__eq__", &Graph::operator==)
        .def("__str__", &format_graph)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.m()) + ")";
        });

    m.def("complete_graph", &complete_graph);
    m.def("cycle_graph", &cycle_graph);
    m.def("path_graph", &path_graph);
    m.def("star_graph", &star_graph);
    m.def("line_graph", [](const Graph& d) { return line_graph(d).g; });
    m.def("isomorphic", &isomorphic);
    m.def("is_free_of", [](const Graph& g, const std::string& p) { return is_free_of(g, pattern_of(p)); });
    m.def("find_pattern", [](const Graph& g, const std::string& p) {
        return contains_induced(g, PatternId::named(pattern_of(p)));
    });

    m.def("classify_structure", [](const Graph& g) {
        auto s = classify_structure(g);
        py::dict d;
        d["kind"] = structure_name(s.kind);
        d["order"] = s.order;
        d["side_a"] = s.side_a;
        d["side_b"] = s.side_b;
        d["missing"] = s.missing;
        d["witness"] = s.witness;
        return d;
    });
    m.def("extend_c5", &extend_c5, py::arg("graph"), py::arg("pre") = PartialMap{});
    m.def("conflicted_pairs", [](const Graph& g, const PartialMap& pre) {
        std::vector<std::pair<int, int>> out;
        for (auto& w : conflicted_pairs(g, pre)) out.emplace_back(w.u, w.v);
        return out;
    });

    m.def("solve_w5ext", &solve_w5ext, py::arg("graph"), py::arg("pre") = PartialMap{}, py::arg("use_oracle") = false,
          "map into W5 (hub 0, rim 1..5) extending pre, or None; the graph must be fork-free");
    m.def("solve_extension", [](const Graph& g, const std::string& kind, int k, const PartialMap& pre) {
        if (kind != "wheel" && kind != "cycle") throw py::value_error("kind must be wheel or cycle");
        return solve_extension(g, make_target(kind == "wheel" ? TargetKind::Wheel : TargetKind::Cycle, k), pre);
    }, py::arg("graph"), py::arg("kind") = "wheel", py::arg("k") = 5, py::arg("pre") = PartialMap{});
    m.def("verify_wheel_map", [](const Graph& g, int k, const FullMap& map, const PartialMap& pre) {
        return verify_map(g, make_target(TargetKind::Wheel, k), map, pre);
    }, py::arg("graph"), py::arg("k"), py::arg("map"), py::arg("pre") = PartialMap{});

    py::class_<ITTEInstance>(m, "ITTEInstance")
        .def(py::init(&make_instance), py::arg("graph"), py::arg("forced_in") = std::vector<int>{},
             py::arg("forced_out") = std::vector<int>{}, py::arg("hit_edges") = EdgeList{})
        .def_readonly("graph", &ITTEInstance::g)
        .def_readonly("forced_in", &ITTEInstance::forced_in)
        .def_readonly("forced_out", &ITTEInstance::forced_out)
        .def_readonly("hit_edges", &ITTEInstance::hit_edges)
        .def("__str__", [](const ITTEInstance& i) {
            std::ostringstream o;
            write_itte(o, i);
            return o.str();
        });
    m.def("reduce_w5ext_to_itte", [](const Graph& g, const PartialMap& pre) -> py::object {
        auto r = reduce_w5ext_to_itte(g, pre);
        if (r.trivial_no) return py::none();
        return py::cast(r.inst);
    }, py::arg("graph"), py::arg("pre") = PartialMap{}, "None when the precolouring already rules out a map");
    m.def("lift_solution", &lift_solution);
    m.def("solve_itte", &solve_itte, py::arg("instance"), py::arg("method") = "s211", py::arg("threads") = 1);
    m.def("verify_itte", &verify_itte);

    m.def("max_weight_matching", &max_weight_matching, py::arg("graph"), py::arg("weights"),
          "mate per vertex (-1 when unmatched); weights follow graph.edges()");

    m.def("diamond_chain", [](int l) {
        auto c = diamond_chain(l);
        return py::make_tuple(c.graph, c.x1, c.x2);
    });
    m.def("s333_hardness_instance", [](const Graph& g, bool peel) {
        auto p = s333_hardness_instance(g, peel);
        return py::make_tuple(p.g, p.pre, p.original);
    }, py::arg("graph"), py::arg("peel") = true);
    m.def("pos_1in3_transform", [](int nvars, const std::vector<std::array<int, 3>>& clauses) {
        auto t = pos_1in3_transform(cnf_of(nvars, clauses));
        return py::make_tuple(t.nvars, clauses_of(t));
    }, "clauses use signed 1-based literals");
    m.def("solve_one_in_three", [](int nvars, const std::vector<std::array<int, 3>>& clauses) {
        return solve_one_in_three(cnf_of(nvars, clauses));
    });
    m.def("xg_hardness_instance", [](int nvars, const std::vector<std::array<int, 3>>& clauses, int k, int girth) {
        return xg_hardness_instance(cnf_of(nvars, clauses), k, girth).g;
    }, py::arg("nvars"), py::arg("clauses"), py::arg("k") = 5, py::arg("girth") = 3);
    m.def("random_fork_free", [](int n, double density, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_fork_free(n, density, rng);
    }, py::arg("n"), py::arg("density"), py::arg("seed") = 1);
}
