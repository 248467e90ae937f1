import json

import pytest

from gkm import io
from gkm.builders import (
    complete,
    cube_polytope,
    football,
    johnson,
    octahedron,
    ramified_cover,
    s6,
)
from gkm.cohomology import CohomologyClass, basis
from gkm.errors import MalformedInput, MalformedSkeleton
from gkm.surgery import blow_up


def same_structure(a, b):
    return (a.n == b.n and a.vertices == b.vertices and a.edges == b.edges
            and a.axial == b.axial and a.mult == b.mult and a.theta == b.theta
            and a.generating_class == b.generating_class)


@pytest.mark.parametrize("build", [octahedron, s6, football, lambda: johnson(4, 2),
                                   lambda: ramified_cover(2),
                                   lambda: complete([(0, 0), (1, 0), (0, 1)]),
                                   lambda: blow_up(octahedron(), ["+x"]).result])
def test_skeleton_round_trip(build, tmp_path):
    sk = build()
    path = tmp_path / "sk.json"
    io.write_json(path, io.skeleton_to_json(sk))
    back = io.load_skeleton(path)
    assert same_structure(sk, back)
    assert path.read_text() == io.dumps(io.skeleton_to_json(back))


def test_class_round_trip(tmp_path):
    sk = octahedron()
    for f in basis(sk, 2):
        path = tmp_path / "c.json"
        io.write_json(path, f.to_json())
        assert io.load_class(path, sk) == f


def test_polytope_round_trip():
    P = cube_polytope()
    Q = io.polytope_from_json(json.loads(io.dumps(io.polytope_to_json(P))))
    assert Q.n == P.n and Q.edges == [tuple(e) for e in P.edges]


def test_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(MalformedInput):
        io.load_json(bad)
    with pytest.raises(MalformedInput):
        io.load_json(tmp_path / "missing.json")
    with pytest.raises(MalformedSkeleton):
        io.skeleton_from_json({"n": 2, "vertices": ["a"]})
    with pytest.raises(MalformedInput):
        io.skeleton_from_json({"n": 1, "vertices": ["a", "b"],
                               "edges": [{"id": 0, "src": "a", "dst": "b", "rev": 1,
                                          "axial": ["x"]}],
                               "connection": {}})
    with pytest.raises(MalformedInput):
        io.polytope_from_json({"n": 2, "vertices": [[0, 0, 0]], "edges": []})


def test_class_file_errors():
    sk = octahedron()
    with pytest.raises(MalformedInput):
        CohomologyClass.from_json(sk, {"degree": 1, "values": {"nowhere": []}})
    with pytest.raises(MalformedInput):
        CohomologyClass.from_json(sk, [1, 2])
