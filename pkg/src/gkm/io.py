"""JSON reading and writing for skeleta, classes and polytopes."""
from __future__ import annotations

import json
from pathlib import Path

from .builders import Polytope
from .cohomology import CohomologyClass
from .errors import MalformedInput, MalformedSkeleton
from .exactalg import covector, format_rational
from .skeleton import Edge, OneSkeleton


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg})") from None


def write_json(path, data):
    Path(path).write_text(dumps(data))


def skeleton_to_json(sk: OneSkeleton) -> dict:
    data = {
        "n": sk.n,
        "vertices": list(sk.vertices),
        "edges": [
            {
                "id": e.id,
                "src": sk.vertices[e.src],
                "dst": sk.vertices[e.dst],
                "rev": e.rev,
                "axial": [format_rational(a) for a in sk.axial[e.id]],
                "m": format_rational(sk.mult[e.id]),
            }
            for e in sk.edges
        ],
        "connection": {
            str(e.id): {str(k): v for k, v in sorted(sk.theta[e.id].items())} for e in sk.edges
        },
    }
    if sk.generating_class is not None:
        data["generating_class"] = [[format_rational(x) for x in t] for t in sk.generating_class]
    return data


def skeleton_from_json(data) -> OneSkeleton:
    try:
        n = int(data["n"])
        names = [str(v) for v in data["vertices"]]
        raw_edges = sorted(data["edges"], key=lambda e: int(e["id"]))
        index = {v: i for i, v in enumerate(names)}
        edges, axial, mult = [], [], []
        for e in raw_edges:
            edges.append(Edge(int(e["id"]), index[str(e["src"])], index[str(e["dst"])],
                              int(e["rev"])))
            axial.append(covector(e["axial"]))
            mult.append(e.get("m", "1"))
        conn_raw = data["connection"]
        conn = [{int(k): int(v) for k, v in conn_raw[str(e.id)].items()} for e in edges]
        gen = data.get("generating_class")
    except MalformedInput:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedSkeleton(f"malformed skeleton file: {exc!r}") from None
    return OneSkeleton(n, names, edges, axial, mult, conn, gen)


def load_skeleton(path) -> OneSkeleton:
    return skeleton_from_json(load_json(path))


def load_class(path, sk: OneSkeleton) -> CohomologyClass:
    return CohomologyClass.from_json(sk, load_json(path))


def polytope_from_json(data) -> Polytope:
    try:
        n = int(data["n"])
        coords = [covector(v) for v in data["vertices"]]
        edges = [(int(a), int(b)) for a, b in data["edges"]]
        names = data.get("names")
    except MalformedInput:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed polytope file: {exc!r}") from None
    if any(len(c) != n for c in coords):
        raise MalformedInput("vertex coordinates have the wrong length")
    return Polytope(n, coords, edges, names)


def polytope_to_json(P: Polytope) -> dict:
    data = {
        "n": P.n,
        "vertices": [[format_rational(x) for x in c] for c in covector_list(P.coords)],
        "edges": [list(e) for e in P.edges],
    }
    if P.names:
        data["names"] = list(P.names)
    return data


def covector_list(coords):
    return [covector(c) for c in coords]
