"""Smoke test for the bergdim_py extension.

Build it first with `pip install -e crates/py --no-build-isolation`.
"""

import json
from pathlib import Path

import bergdim_py as bd

DATA = Path(__file__).resolve().parents[2] / "core" / "testdata"


def read(*parts):
    return (DATA.joinpath(*parts)).read_text()


def main():
    nodal = bd.Curve.load(DATA / "curves" / "nodal_cubic.json")
    assert nodal.genus == 0 and nodal.degree == 3
    assert [p[1:] for p in nodal.singular_points] == [(2, 1)]

    boundary = bd.OpenSet.load(DATA / "opensets" / "origin_boundary.json")
    verdict = json.loads(nodal.decide(boundary, policy="exact"))
    assert verdict["verdict"] == "finite" and verdict["exact_dim"] == 1

    non_polar = bd.OpenSet.load(DATA / "opensets" / "non_polar.json")
    assert json.loads(nodal.decide(non_polar))["verdict"] == "infinite"

    report = json.loads(bd.analyze(read("curves", "cuspidal_cubic.json")))
    assert report["curve"]["singular_point_count"] == 1

    glued = read("curves", "glued_n4_k2.json")
    report = json.loads(bd.l2delta(glued, read("opensets", "glued.json")))
    assert report["l2delta"]["l2_delta"] == 2

    numeric = json.loads(bd.verify())
    assert numeric["numeric"]["passed"]

    try:
        bd.Curve.from_json(read("bad", "not_homogeneous.json"))
    except bd.BergdimError as e:
        assert e.args[1] == 2
    else:
        raise AssertionError("inhomogeneous curve accepted")

    print("bergdim_py smoke test passed")


if __name__ == "__main__":
    main()
