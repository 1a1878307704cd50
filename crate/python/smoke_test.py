"""Smoke test for the torus_spectra extension module.

Build first:
    cargo build --release -p torus-spectra-py
    cp target/release/libtorus_spectra.so python/torus_spectra.so
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import torus_spectra as ts


def main() -> None:
    a3 = ts.RootDatum("A3")
    assert a3.rank == 3 and a3.family == "A"
    assert a3.weyl_group_order() == 24
    assert a3.weyl_dimension([0, 1, 0]) == 6
    assert a3.dominance_compare([1, 0, 1], [0, 0, 0]) == "first"
    assert a3.dominance_compare([0, 1, 0], [0, 0, 0]) == "incomparable"
    assert a3.is_minuscule([0, 1, 0])
    assert a3.level([1, 0, 1]) == 2

    weights = dict((tuple(w), m) for w, m in ts.RootDatum("A2").weights([1, 1]))
    assert len(weights) == 7 and weights[(0, 0)] == 2

    s = ts.TorusElement.from_epsilon(a3, "a,a,1/a,1/a")
    assert not s.is_regular() and not s.is_central()
    sp = s.spectrum([0, 1, 0])
    assert sp.entries() == [("a^-2", 1), ("1", 4), ("a^2", 1)], sp
    assert sp.classification() == "AlmostSimple" and sp.max_multiplicity() == 4
    assert json.loads(sp.to_json())["banner"] == ts.VALIDITY_BANNER

    g = ts.TorusElement.generic(a3, [], seed=1)
    assert g.is_regular()
    assert g.spectrum([1, 0, 0]).classification() == "Simple"
    assert sp.tensor(sp).total() == 36

    same = ts.TorusElement.from_json(a3, s.to_json())
    assert same.spectrum([0, 1, 0]).entries() == sp.entries()

    report = ts.run_check("witnesses")
    assert report.passed, report
    assert ts.run_check("level-table", "C", 4).passed
    assert ts.run_check("c99", "A", 3, dim_bound=20, depth=2).passed

    try:
        ts.RootDatum("X9")
    except ValueError:
        pass
    else:
        raise AssertionError("X9 accepted")
    try:
        ts.TorusElement.generic(a3, [[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    except ValueError as e:
        assert "central" in str(e)
    else:
        raise AssertionError("full-rank kernel accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
