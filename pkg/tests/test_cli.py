import io

import pytest

from hubsolve.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture
def k3(tmp_path):
    g = tmp_path / "k3.gr"
    g.write_text("p 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    h = tmp_path / "k3.hub"
    h.write_text("hub 2 1 2\n1 2\n")
    return str(g), str(h)


def test_solve_coloring_yes_no(k3):
    g, h = k3
    code, out = run("solve", "coloring", "--q", "3", "--graph", g, "--hub", h)
    assert code == 0 and "verdict=yes" in out
    code, out = run("solve", "coloring", "--q", "2", "--graph", g, "--hub", h)
    assert code == 1 and "verdict=no" in out


def test_solve_vd_and_greedy_hub(k3):
    g, _ = k3
    code, out = run("solve", "vd", "--q", "2", "--graph", g, "--stats")
    assert code == 0 and "cost=1" in out


def test_usage_errors(k3):
    assert run("frobnicate")[0] == 2
    code, out = run("solve", "coloring", "--graph", k3[0])
    assert code == 2 and "--q" in out
    assert run("solve", "triangle", "--graph", k3[0])[0] == 2


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "bad.gr"
    bad.write_text("p 2 1\ne 1 3\n")
    code, out = run("solve", "coloring", "--q", "2", "--graph", str(bad))
    assert code == 2 and "out of range" in out


def test_triangle_and_domset(k3):
    g, h = k3
    code, out = run("solve", "triangle", "--graph", g, "--hub", h, "--target", "1",
                    "--capacity", "1")
    assert code == 0 and "verdict=yes" in out
    code, out = run("solve", "domset", "--graph", g)
    assert code == 0 and "cost=1" in out


def test_setsys_and_reduce(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("u 3\nvariant cover-le\nt 2\ns 1 2\ns 2 3\n")
    code, out = run("solve", "setsys", "--input", str(f))
    assert code == 0 and "verdict=yes" in out
    d = tmp_path / "out"
    code, out = run("reduce", "cover-to-partition-sets", "--input", str(f), "--out-dir", str(d))
    assert code == 0 and len(list(d.iterdir())) == 1


def test_gadget_trieq_and_verify(tmp_path):
    out_file = tmp_path / "eq.gr"
    code, _ = run("gadget", "trieq", "--r", "3", "--out", str(out_file))
    assert code == 0 and "portal 1 2 3" in out_file.read_text()
    gad = tmp_path / "or2.gad"
    assert run("gadget", "build", "or2", "--out", str(gad))[0] == 0
    rel = tmp_path / "or2.rel"
    rel.write_text("relation 2 2\n1 1\n1 2\n2 1\n")
    code, out = run("gadget", "verify", "--gadget", str(gad), "--relation", str(rel),
                    "--omega", "2")
    assert code == 0 and "realizes=yes" in out


def test_cap_exceeded(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("u 3\nvariant cover-le\nt 2\ns 1 2\ns 2 3\n")
    code, out = run("solve", "setsys", "--input", str(f), "--cap", "2")
    assert code == 3 and "cap exceeded" in out


def test_selfcheck_deterministic():
    a = run("selfcheck", "--level", "quick", "--only", "8", "3")
    b = run("selfcheck", "--level", "quick", "--only", "8", "3")
    assert a == b and a[0] == 0 and "selfcheck=pass" in a[1]
