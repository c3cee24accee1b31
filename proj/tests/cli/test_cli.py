import json
import os
import subprocess

BIN = os.environ.get("WHEELHOM_CLI", "build/wheelhom")

W5_EDGES = [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)]


def run(*args, check=None):
    p = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=300)
    if check is not None:
        assert p.returncode == check, p.stdout + p.stderr
    return p


def graph_text(n, edges):
    return f"{n} {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def fields(text):
    out = {}
    for line in text.splitlines():
        if ": " in line:
            k, v = line.split(": ", 1)
            out[k] = v
    return out


def test_w5ext_yes_and_witness_roundtrip(tmp_path):
    g = write(tmp_path, "c5.txt", graph_text(5, [(i, (i + 1) % 5) for i in range(5)]))
    pre = write(tmp_path, "pre.txt", "0 -> 1\n")
    out = tmp_path / "map.txt"
    r = run("solve", "w5ext", g, "--pre", pre, "--out", out, check=0)
    assert fields(r.stdout)["answer"] == "yes"
    run("verify", "hom", g, out, "--pre", pre, check=0)
    # a broken map is rejected
    lines = out.read_text().splitlines()
    lines[1] = "1 -> 3"
    bad = write(tmp_path, "bad.txt", "\n".join(lines) + "\n")
    r = run("verify", "hom", g, bad, check=1)
    assert fields(r.stdout)["valid"] == "no"


def test_k4_is_no(tmp_path):
    g = write(tmp_path, "k4.txt", graph_text(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))
    r = run("solve", "w5ext", g, check=1)
    assert fields(r.stdout)["answer"] == "no"
    r = run("solve", "w5ext", g, "--oracle", check=1)
    assert fields(r.stdout)["answer"] == "no"


def test_conflicting_precolouring(tmp_path):
    g = write(tmp_path, "p2.txt", graph_text(2, [(0, 1)]))
    pre = write(tmp_path, "pre.txt", "0 -> 1\n1 -> 3\n")
    run("solve", "w5ext", g, "--pre", pre, check=1)
    r = run("reduce", "w5-to-itte", g, "--pre", pre, check=1)
    assert fields(r.stdout)["reason"] == "precoloring conflict"


def test_fork_is_rejected_with_witness(tmp_path):
    fork = write(tmp_path, "fork.txt", graph_text(5, [(0, 1), (0, 2), (0, 3), (3, 4)]))
    r = run("solve", "w5ext", fork, check=2)
    assert "S211" in r.stderr
    assert "witness" in r.stderr


def test_parse_errors_name_file_and_line(tmp_path):
    g = write(tmp_path, "broken.txt", "3 2\n0 1\n1 7\n")
    r = run("solve", "w5ext", g, check=2)
    assert "broken.txt" in r.stderr
    assert "line 3" in r.stderr
    r = run("solve", "w5ext", tmp_path / "missing.txt", check=2)
    assert "missing.txt" in r.stderr
    pre = write(tmp_path, "pre.txt", "0 -> 1\n1 => 2\n")
    ok = write(tmp_path, "ok.txt", graph_text(2, [(0, 1)]))
    r = run("solve", "w5ext", ok, "--pre", pre, check=2)
    assert "pre.txt" in r.stderr and "line 2" in r.stderr


def test_reduce_then_solve_itte(tmp_path):
    g = write(tmp_path, "w5.txt", graph_text(6, W5_EDGES))
    pre = write(tmp_path, "pre.txt", "0 -> 0\n1 -> 1\n")
    r = run("reduce", "w5-to-itte", g, "--pre", pre, check=0)
    inst = write(tmp_path, "inst.txt", r.stdout)
    assert "X':" in r.stdout
    for cls in ["s211", "oracle", "treewidth", "clawfree"]:
        out = tmp_path / f"sol_{cls}.txt"
        r = run("solve", "itte", inst, "--class", cls, "--out", out, check=0)
        assert fields(r.stdout)["answer"] == "yes"
        run("verify", "itte", inst, out, check=0)
    empty = write(tmp_path, "empty.txt", "")
    run("verify", "itte", inst, empty, check=1)


def test_itte_no_and_json(tmp_path):
    inst = write(tmp_path, "k4.txt", graph_text(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))
    r = run("--json", "solve", "itte", inst, check=1)
    doc = json.loads(r.stdout)
    assert doc["answer"] == "no"
    run("solve", "itte", inst, "--class", "bogus", check=2)


def test_itte_clawfree_with_strip(tmp_path):
    # L(K4) with its strip structure
    r = run("generate", "no-pm-cubic", check=0)
    assert r.stdout.startswith("16 24\n")
    lk4 = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
    g = write(tmp_path, "lk4.txt", graph_text(6, lk4))
    d = graph_text(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    strip = d
    for e, (x, y) in enumerate([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]):
        strip += f"eta {x} {y}: {e}\nend {x} {y} {x}: {e}\nend {x} {y} {y}: {e}\n"
    s = write(tmp_path, "strip.txt", strip)
    r = run("verify", "strip", g, s, check=0)
    assert fields(r.stdout)["valid"] == "yes"
    r = run("solve", "itte", g, "--class", "clawfree", "--strip", s)
    assert r.returncode in (0, 1)
    oracle = run("solve", "itte", g, "--class", "oracle")
    assert r.returncode == oracle.returncode
    bad = write(tmp_path, "bad_strip.txt", strip.replace("eta 0 1: 0\n", "eta 0 1: 0 1\n"))
    r = run("verify", "strip", g, bad, check=1)
    assert fields(r.stdout)["axiom"] in ("shape", "S2")


def test_generators(tmp_path):
    r = run("generate", "chain", "--l", 3, check=0)
    assert r.stdout.startswith("10 15\n")
    assert fields(r.stderr)["x2"] == "9"
    k4 = write(tmp_path, "k4.txt", graph_text(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))
    r = run("generate", "q-ell", "--l", 1, "--graph", k4, check=0)
    assert r.stdout.startswith("24 ")
    r = run("generate", "s333", k4, check=0)
    assert fields(r.stderr)["vertices"] == "16"
    graph_part, pre_part = r.stdout.split("# precoloring\n")
    assert graph_part.startswith("16 ")
    assert pre_part.splitlines() == [f"{4 + 3 * v} -> 0" if i % 2 == 0 else f"{6 + 3 * v} -> 4"
                                     for v in range(4) for i in range(2)]
    claw = write(tmp_path, "claw.txt", graph_text(4, [(0, 1), (0, 2), (0, 3)]))
    r = run("generate", "s333", claw, check=2)
    assert "claw" in r.stderr
    cnf = write(tmp_path, "f.cnf", "c one clause\np 1in3 3 1\n1 -2 3 0\n")
    r = run("generate", "pos1in3", cnf, check=0)
    assert r.stdout.startswith("p pos1in3 15 10\n")
    pos = write(tmp_path, "pos.cnf", "p pos1in3 3 1\n1 2 3 0\n")
    r = run("generate", "xg", pos, "--k", 5, "--girth", 3, check=0)
    assert fields(r.stderr)["ell"] == "3"
    assert int(r.stdout.split()[0]) == 5 * 3 + 9 * 3
    run("generate", "xg", cnf, check=2)
    r = run("--seed", 7, "generate", "random-fork-free", "--n", 12, "--density", 0.4, check=0)
    again = run("--seed", 7, "generate", "random-fork-free", "--n", 12, "--density", 0.4, check=0)
    assert r.stdout == again.stdout
    ff = write(tmp_path, "ff.txt", r.stdout)
    out = tmp_path / "ff_map.txt"
    solved = run("solve", "w5ext", ff, "--out", out)
    oracle = run("solve", "w5ext", ff, "--oracle")
    assert solved.returncode == oracle.returncode
    if solved.returncode == 0:
        run("verify", "hom", ff, out, check=0)
    bad = write(tmp_path, "bad.cnf", "p 1in3 3 1\n1 2 0\n")
    r = run("generate", "pos1in3", bad, check=2)
    assert "bad.cnf" in r.stderr and "line 2" in r.stderr


def test_enumerate():
    r = run("enumerate", "--n", 5, check=0)
    assert fields(r.stdout)["count"] == "21"
    r = run("enumerate", "--n", 4, "--free", "k3", check=0)
    assert fields(r.stdout)["count"] == "3"
    run("enumerate", "--n", 12, check=2)
    r = run("--json", "enumerate", "--n", 3, "--print", check=0)
    doc = json.loads(r.stdout)
    assert doc["count"] == 2
