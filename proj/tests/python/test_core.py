import itertools

import pytest

import wheelhom as wh

W5_EDGES = [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)]


def wheel_brute(g, k, pre):
    # every map, edges checked at the end
    adj = lambda a, b: (a == 0) != (b == 0) or (a and b and (a - b) % k in (1, k - 1))
    for m in itertools.product(range(k + 1), repeat=g.n):
        if any(m[v] != c for v, c in pre.items()):
            continue
        if all(adj(m[u], m[v]) for u, v in g.edges()):
            return True
    return False


def test_graph_basics():
    g = wh.Graph(4, [(0, 1), (2, 1), (2, 3)])
    assert g.n == 4 and g.m == 3
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.neighbours(1) == [0, 2]
    assert g == wh.path_graph(4)
    assert wh.isomorphic(wh.line_graph(wh.star_graph(3)), wh.complete_graph(3))
    assert not wh.is_free_of(wh.Graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)]), "fork")
    assert wh.find_pattern(wh.cycle_graph(5), "claw") is None
    with pytest.raises(ValueError):
        wh.is_free_of(g, "petersen")


def test_w5ext_matches_brute_force():
    w5 = wh.Graph(6, W5_EDGES)
    assert wh.solve_w5ext(wh.complete_graph(4)) is None
    m = wh.solve_w5ext(w5, {0: 0, 1: 1})
    assert m is not None and m[0] == 0 and m[1] == 1
    assert wh.verify_wheel_map(w5, 5, m, {0: 0, 1: 1})
    for seed in range(25):
        g = wh.random_fork_free(6, 0.5, seed)
        pre = {v: (seed + v) % 6 for v in range(0, g.n, 3)}
        got = wh.solve_w5ext(g, pre)
        assert (got is not None) == wheel_brute(g, 5, pre)
        if got is not None:
            assert wh.verify_wheel_map(g, 5, got, pre)


def test_fork_raises():
    fork = wh.Graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    with pytest.raises(wh.PreconditionError):
        wh.solve_w5ext(fork)


def test_structure_and_c5():
    s = wh.classify_structure(wh.cycle_graph(7))
    assert s["kind"] == "long-cycle"
    assert sorted(s["order"]) == list(range(7))
    p = wh.path_graph(3)
    assert wh.conflicted_pairs(p, {0: 1, 2: 1}) == []
    assert wh.conflicted_pairs(p, {0: 1, 2: 2}) == [(0, 2)]
    assert wh.extend_c5(p, {0: 1, 2: 2}) is None
    assert wh.extend_c5(p, {0: 1, 2: 3})[1] == 2


def test_itte_methods_agree():
    for seed in range(10):
        g = wh.random_fork_free(10, 0.4, 100 + seed)
        inst = wh.ITTEInstance(g, forced_in=[0] if seed % 2 else [])
        answers = {m: wh.solve_itte(inst, m) for m in ("s211", "treewidth", "oracle")}
        assert len({a is None for a in answers.values()}) == 1
        for x in answers.values():
            if x is not None:
                assert wh.verify_itte(inst, x)
    with pytest.raises(ValueError):
        wh.solve_itte(wh.ITTEInstance(wh.path_graph(2)), "magic")
    with pytest.raises(ValueError):
        wh.ITTEInstance(wh.path_graph(2), hit_edges=[(0, 5)])


def test_reduce_and_lift():
    w5 = wh.Graph(6, W5_EDGES)
    pre = {0: 0, 1: 1}
    inst = wh.reduce_w5ext_to_itte(w5, pre)
    x = wh.solve_itte(inst, "oracle")
    m = wh.lift_solution(w5, pre, x)
    assert wh.verify_wheel_map(w5, 5, m, pre)
    assert wh.reduce_w5ext_to_itte(wh.path_graph(2), {0: 1, 1: 3}) is None


def test_matching():
    g = wh.cycle_graph(4)
    w = {(0, 1): 5, (0, 3): 1, (1, 2): 1, (2, 3): 5}
    mate = wh.max_weight_matching(g, [w[e] for e in g.edges()])
    assert mate == [1, 0, 3, 2]
    assert sum(w[(v, u)] for v, u in enumerate(mate) if u > v) == 10


def test_generators():
    g, x1, x2 = wh.diamond_chain(2)
    assert (g.n, x1, x2) == (7, 0, 6)
    h, pre, original = wh.s333_hardness_instance(wh.complete_graph(4))
    assert h.n == 16 and original == [0, 1, 2, 3]
    assert wh.solve_extension(h, "wheel", 5, pre) is None
    nvars, clauses = wh.pos_1in3_transform(3, [(1, -2, 3)])
    assert nvars == 15 and len(clauses) == 10
    assert all(l > 0 for c in clauses for l in c)
    assert wh.solve_one_in_three(nvars, clauses) is not None
    xg = wh.xg_hardness_instance(3, [(1, 2, 3)])
    assert xg.n == 42
    assert wh.solve_extension(xg) is not None
    with pytest.raises(wh.PreconditionError):
        wh.xg_hardness_instance(2, [(1, -2, 2)])
