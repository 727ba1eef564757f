#!/usr/bin/env python3
"""Smoke test for the Python bindings.

Builds the extension with cargo, loads it from the target directory, and
exercises one representative call per exposed surface. Exits nonzero on any
mismatch.
"""
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "rainbow-ch-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "librainbow_ch_py.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "release" / "librainbow_ch_py.dylib"
    stage = Path(tempfile.mkdtemp(prefix="rainbow_ch_py_"))
    shutil.copy(built, stage / "rainbow_ch_py.so")
    sys.path.insert(0, str(stage))
    import rainbow_ch_py

    return rainbow_ch_py


def main():
    m = build_and_import()

    # Graph basics.
    k6 = m.Graph.complete(6)
    assert k6.edge_count() == 15
    assert len(k6.triangles()) == 20
    assert k6.max_tiling_number() == 2
    g = m.Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert g.min_degree() == 2 and not g.is_bipartite()
    assert m.Graph.from_graph6(g.to_graph6()).edges() == g.edges()

    # Constructions and closed forms.
    e1, parts = m.construction("E1", 9, 1)
    assert e1.edge_count() == 24 == m.construction_edge_count("E1", 9, 1)
    assert len(parts["X"]) == 1 and len(parts["Y1"]) == 4

    # Decomposition.
    k7 = m.Graph.complete(7)
    triple = k7.maximal_tiling_triple()
    assert (len(triple["triangles"]), len(triple["matching"]), len(triple["singletons"])) == (2, 0, 1)
    stats = e1.partition_stats()
    assert sum(3 * x for x in stats[:4]) + 2 * stats[4] + stats[5] == 9

    # Closed forms and identities.
    assert m.poly_h(1, 0, 0, 0, 2, 3) == 27
    assert m.poly_g(0, 0, 0, 0, 0, 0) == -28
    assert m.xi_piecewise(100, 10) == 2970 == m.xi_from_constructions(100, 10)
    assert m.ex_abhp(6, 1) == 12
    assert m.ar_first_interval(20, 1) == 111
    holds, lhs, rhs = m.check_identity(3, 2, 1, 3, 0, 1, 4, 2)
    assert holds and lhs == rhs == "2"

    # Colorings and rainbow search.
    c = m.lower_bound_coloring("E1", 9, 1)
    assert c.num_colors == 25
    assert c.find_rainbow_tiling(3) is None
    rep = c.representative_graph()
    assert rep.edge_count() == 25
    back = m.EdgeColoring.from_json(c.to_json())
    assert back.color(0, 1) == c.color(0, 1)

    # Oracles.
    assert m.ex_oracle(6, 2) == 12
    assert m.ex_oracle(5, 1) == 6
    ar, witness = m.ar_oracle(4, 1)
    assert ar == 4
    assert witness.find_rainbow_tiling(1) is None

    print("smoke test passed")


if __name__ == "__main__":
    main()
