"""Abstract one-skeleta: graphs with axial functions and connections."""
from __future__ import annotations

import itertools
import os
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    CyclicOrientation,
    HypothesesViolated,
    MalformedSkeleton,
    NotPolarizing,
    NotTotallyGeodesic,
)
from .exactalg import (
    Covector,
    covector,
    cov_is_zero,
    is_independent,
    pairing,
    plane_key,
    rank,
    ratio,
    to_fraction,
)


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int
    rev: int


class OneSkeleton:
    """A d-valent graph with axial covectors, multiplicities and a connection.

    Vertices are dense integers 0..|V|-1 with string names.  Every oriented
    edge has an id, a reverse, an axial covector in Q^n, a positive
    multiplicity and a connection map ``theta[e]`` sending the edges out of
    ``src(e)`` bijectively to the edges out of ``dst(e)``.  Parallel edges
    are allowed.  Structural consistency is checked on construction; the
    axioms themselves are checked by :func:`validate`.
    """

    def __init__(self, n, vertices, edges, axial, mult=None, connection=None,
                 generating_class=None):
        self.n = int(n)
        self.vertices = tuple(str(v) for v in vertices)
        self.edges = tuple(edges)
        self.axial = tuple(covector(a) for a in axial)
        if mult is None:
            mult = [1] * len(self.edges)
        self.mult = tuple(to_fraction(m) for m in mult)
        self.theta = tuple(dict(c) for c in (connection or [{} for _ in self.edges]))
        self.generating_class = (
            None if generating_class is None
            else tuple(covector(t) for t in generating_class)
        )
        self._index = {name: i for i, name in enumerate(self.vertices)}
        self.out = self._build_out()
        self._check_structure()

    def _build_out(self):
        out = [[] for _ in self.vertices]
        for e in self.edges:
            if not (0 <= e.src < len(self.vertices) and 0 <= e.dst < len(self.vertices)):
                raise MalformedSkeleton(f"edge {e.id} has an unknown endpoint", [e.id])
            out[e.src].append(e.id)
        return tuple(tuple(sorted(o)) for o in out)

    def _check_structure(self):
        if len(self._index) != len(self.vertices):
            raise MalformedSkeleton("duplicate vertex names")
        for i, e in enumerate(self.edges):
            if e.id != i:
                raise MalformedSkeleton("edge ids must be 0..|E|-1 in order", [i])
        if not (len(self.axial) == len(self.mult) == len(self.theta) == len(self.edges)):
            raise MalformedSkeleton("per-edge data has the wrong length")
        for e in self.edges:
            if not (0 <= e.rev < len(self.edges)):
                raise MalformedSkeleton("bad reverse", [e.id])
            r = self.edges[e.rev]
            if r.rev != e.id or r.src != e.dst or r.dst != e.src or e.rev == e.id:
                raise MalformedSkeleton("reverse is not an involution", [e.id])
            if len(self.axial[e.id]) != self.n:
                raise MalformedSkeleton("axial has the wrong length", [e.id])
            if self.mult[e.id] <= 0:
                raise MalformedSkeleton("multiplicity must be positive", [e.id])
        degs = {len(o) for o in self.out}
        if len(degs) > 1:
            raise MalformedSkeleton("valence is not constant", sorted(degs))
        for e in self.edges:
            th = self.theta[e.id]
            src, dst = set(self.out[e.src]), set(self.out[e.dst])
            if set(th) != src or set(th.values()) != dst or len(set(th.values())) != len(th):
                raise MalformedSkeleton("connection is not a bijection E_src -> E_dst", [e.id])
            if th[e.id] != e.rev:
                raise MalformedSkeleton("connection must send e to its reverse", [e.id])
            inv = self.theta[e.rev]
            if any(inv[th[k]] != k for k in th):
                raise MalformedSkeleton("connection along the reverse is not the inverse", [e.id])
        if self.generating_class is not None:
            if len(self.generating_class) != len(self.vertices):
                raise MalformedSkeleton("generating class needs one covector per vertex")

    # basic queries
    @property
    def valence(self) -> int:
        return len(self.out[0]) if self.out else 0

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < len(self.vertices):
                raise MalformedSkeleton(f"vertex index {name} out of range")
            return name
        try:
            return self._index[str(name)]
        except KeyError:
            raise MalformedSkeleton(f"unknown vertex {name!r}") from None

    def undirected(self) -> list:
        """One representative (the smaller id) per unoriented edge."""
        return [e for e in self.edges if e.id < e.rev]

    def neighbors(self, v) -> list:
        return [self.edges[e].dst for e in self.out[v]]

    def __repr__(self):
        return (f"OneSkeleton(n={self.n}, |V|={len(self.vertices)}, "
                f"d={self.valence}, |E|={len(self.edges) // 2})")


def pair_multiplicities(a: Covector, b: Covector):
    """Multiplicities (m_e, m_rev) with m_rev*b == -m_e*a, or (1, 1) if none exist."""
    t = ratio(b, a) if not cov_is_zero(a) else None
    if t is None or t >= 0:
        return Fraction(1), Fraction(1)
    return -t, Fraction(1)


def normalize_multiplicities(sk: OneSkeleton) -> OneSkeleton:
    """Equivalent skeleton with every m_e = 1 and axial(rev e) = -axial(e).

    Each edge pair keeps the covector of its lower id.  Positive rescaling of
    axial covectors preserves A1, A3 (with rescaled lambda) and all
    orientations, so Betti numbers and classes up to scaling are unchanged.
    """
    axial = list(sk.axial)
    for e in sk.edges:
        lhs = tuple(sk.mult[e.rev] * a for a in sk.axial[e.rev])
        if lhs != tuple(-sk.mult[e.id] * a for a in sk.axial[e.id]):
            raise HypothesesViolated("A2 fails, multiplicities cannot be normalized", [e.id])
        if e.id < e.rev:
            axial[e.rev] = tuple(-a for a in sk.axial[e.id])
    gen = sk.generating_class if all(m == 1 for m in sk.mult) else None
    return OneSkeleton(sk.n, sk.vertices, sk.edges, axial, None, sk.theta, gen)


def make_skeleton(n, vertices, edge_list, connection_rule, generating_class=None):
    """Assemble a skeleton from a list of (src, dst, axial_fwd, axial_back, m_fwd, m_back).

    ``connection_rule(sk_partial, e)`` must return the connection map along
    oriented edge ``e`` given the edge table.  Multiplicities left as None
    are derived from the axials.
    """
    edges, axial, mult = [], [], []
    for src, dst, a, b, mf, mb in edge_list:
        i = len(edges)
        edges.append(Edge(i, src, dst, i + 1))
        edges.append(Edge(i + 1, dst, src, i))
        a, b = covector(a), covector(b)
        if mf is None or mb is None:
            mf, mb = pair_multiplicities(a, b)
        axial += [a, b]
        mult += [mf, mb]
    out = [[] for _ in vertices]
    for e in edges:
        out[e.src].append(e.id)
    ctx = _EdgeTable(edges, out, axial)
    conn = [connection_rule(ctx, e) for e in edges]
    return OneSkeleton(n, vertices, edges, axial, mult, conn, generating_class)


@dataclass
class _EdgeTable:
    edges: list
    out: list
    axial: list


# ----------------------------------------------------------------- axioms

@dataclass
class AxiomResult:
    name: str
    ok: bool = True
    violations: list = field(default_factory=list)


@dataclass
class ValidationReport:
    a1: AxiomResult
    a2: AxiomResult
    a3: AxiomResult
    lambdas: dict  # (e, e_i) -> lambda
    cs: dict       # (e, e_i) -> c

    @property
    def ok(self) -> bool:
        return self.a1.ok and self.a2.ok and self.a3.ok

    def lines(self) -> list:
        out = []
        for r in (self.a1, self.a2, self.a3):
            if r.ok:
                out.append(f"{r.name} ok")
            else:
                out.append(f"{r.name} FAIL witness={r.violations[0]}")
        return out


def _solve_two(u, v, w):
    """Find (lam, c) with u == lam*v + c*w, or None; v, w independent."""
    n = len(u)
    # pick two coordinates where (v, w) is invertible
    for i in range(n):
        for j in range(i + 1, n):
            det = v[i] * w[j] - v[j] * w[i]
            if det:
                lam = (u[i] * w[j] - u[j] * w[i]) / det
                c = (v[i] * u[j] - v[j] * u[i]) / det
                if all(u[k] == lam * v[k] + c * w[k] for k in range(n)):
                    return lam, c
                return None
    return None


def validate(sk: OneSkeleton) -> ValidationReport:
    a1 = AxiomResult("A1")
    for p in range(sk.num_vertices):
        es = sk.out[p]
        for x, y in itertools.combinations(es, 2):
            if not is_independent([sk.axial[x], sk.axial[y]]):
                a1.violations.append({"vertex": sk.vertices[p], "edges": [x, y]})
        for x in es:
            if cov_is_zero(sk.axial[x]):
                a1.violations.append({"vertex": sk.vertices[p], "edges": [x]})
    a1.ok = not a1.violations

    a2 = AxiomResult("A2")
    for e in sk.edges:
        lhs = tuple(sk.mult[e.rev] * a for a in sk.axial[e.rev])
        rhs = tuple(-sk.mult[e.id] * a for a in sk.axial[e.id])
        if lhs != rhs:
            a2.violations.append({"edge": e.id})
    a2.ok = not a2.violations

    a3 = AxiomResult("A3")
    lambdas, cs = {}, {}
    for e in sk.edges:
        w = sk.axial[e.id]
        for ei, ej in sorted(sk.theta[e.id].items()):
            u, v = sk.axial[ej], sk.axial[ei]
            if ei == e.id:
                t = ratio(u, w) if not cov_is_zero(w) else None
                sol = None if t is None else (Fraction(1), t - 1)
            elif not is_independent([v, w]):
                sol = None
            else:
                sol = _solve_two(u, v, w)
            if sol is None or sol[0] <= 0:
                a3.violations.append({"edge": e.id, "moved": ei})
                continue
            lambdas[(e.id, ei)], cs[(e.id, ei)] = sol
    a3.ok = not a3.violations
    return ValidationReport(a1, a2, a3, lambdas, cs)


def independence_level(sk: OneSkeleton) -> int:
    """Largest l <= min(d, n) such that every l-subset of axials at every
    vertex is linearly independent (0 if some axial vanishes)."""
    level = 0
    for ell in range(1, min(sk.valence, sk.n) + 1):
        for p in range(sk.num_vertices):
            axes = [sk.axial[e] for e in sk.out[p]]
            for sub in itertools.combinations(axes, ell):
                if not is_independent(sub):
                    return level
        level = ell
    return level


def is_three_independent(sk: OneSkeleton) -> bool:
    return independence_level(sk) >= min(3, sk.valence)


def is_gkm(sk: OneSkeleton) -> bool:
    """Integer axials, unit multiplicities, alpha_rev = -alpha, lambda = 1, integer c."""
    if any(m != 1 for m in sk.mult):
        return False
    for e in sk.edges:
        if sk.axial[e.rev] != tuple(-a for a in sk.axial[e.id]):
            return False
        if any(a.denominator != 1 for a in sk.axial[e.id]):
            return False
    rep = validate(sk)
    if not rep.ok:
        return False
    return all(v == 1 for v in rep.lambdas.values()) and all(
        c.denominator == 1 for c in rep.cs.values()
    )


# ------------------------------------------------------------ polarization

def is_polarizing(sk: OneSkeleton, xi: Sequence) -> bool:
    return all(pairing(a, xi) != 0 for a in sk.axial)


def sample_polarizing(sk: OneSkeleton, seed: int, generic: bool = False,
                      max_tries: int = 10000):
    """Seeded rejection sampling of an integer polarizing vector.

    The coordinate bound starts at 3 and doubles every 20 rejections.
    """
    rng = random.Random(seed)
    bound = 3
    for attempt in range(max_tries):
        xi = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(sk.n))
        if is_polarizing(sk, xi) and (not generic or is_generic(sk, xi)):
            return xi
        if attempt % 20 == 19:
            bound *= 2
    raise NotPolarizing("no polarizing vector found")


def wedge_contract(a: Covector, b: Covector, xi) -> Covector:
    """iota_xi(a ^ b) = a(xi) b - b(xi) a."""
    s, t = pairing(a, xi), pairing(b, xi)
    return tuple(s * y - t * x for x, y in zip(a, b))


def is_generic(sk: OneSkeleton, xi: Sequence) -> bool:
    """Genericity: for 4 distinct edges at a vertex, the contracted wedges
    of the first and second pair are independent."""
    return generic_witness(sk, xi) is None


def generic_witness(sk: OneSkeleton, xi):
    for p in range(sk.num_vertices):
        es = sk.out[p]
        if len(es) < 4:
            continue
        for quad in itertools.combinations(es, 4):
            for pair in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
                (i, j), (k, l) = pair
                a = wedge_contract(sk.axial[quad[i]], sk.axial[quad[j]], xi)
                b = wedge_contract(sk.axial[quad[k]], sk.axial[quad[l]], xi)
                if not is_independent([a, b]):
                    return [quad[i], quad[j], quad[k], quad[l]]
    return None


@dataclass
class Polarization:
    skeleton: OneSkeleton
    xi: tuple
    index: tuple   # per vertex
    phi: tuple     # per vertex, Fractions, injective
    up: frozenset  # oriented edge ids e with alpha_e(xi) > 0

    def order(self) -> list:
        """Vertices sorted by increasing phi."""
        return sorted(range(len(self.phi)), key=lambda v: self.phi[v])

    def down_edges(self, v) -> list:
        return [e for e in self.skeleton.out[v] if e not in self.up]

    def up_edges(self, v) -> list:
        return [e for e in self.skeleton.out[v] if e in self.up]


def _find_cycle(sk: OneSkeleton, up):
    color = [0] * sk.num_vertices
    parent = {}
    for root in range(sk.num_vertices):
        if color[root]:
            continue
        stack = [(root, iter([sk.edges[e].dst for e in sk.out[root] if e in up]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
                continue
            if color[nxt] == 1:
                cyc = [nxt]
                for w, _ in reversed(stack):
                    cyc.append(w)
                    if w == nxt:
                        break
                return list(reversed(cyc))
            if color[nxt] == 0:
                color[nxt] = 1
                parent[nxt] = v
                stack.append((nxt, iter([sk.edges[e].dst for e in sk.out[nxt] if e in up])))
    return None


def orientation(sk: OneSkeleton, xi):
    if not is_polarizing(sk, xi):
        bad = [e.id for e in sk.edges if pairing(sk.axial[e.id], xi) == 0]
        raise NotPolarizing("xi vanishes on an axial", bad[:2])
    up = frozenset(e.id for e in sk.edges if pairing(sk.axial[e.id], xi) > 0)
    index = tuple(
        sum(1 for e in sk.out[p] if e not in up) for p in range(sk.num_vertices)
    )
    return up, index


def polarize(sk: OneSkeleton, xi: Sequence, phi=None) -> Polarization:
    """Orient edges by sign(alpha(xi)) and build an injective compatible phi.

    The default phi is the longest directed path ending at a vertex, plus
    rank/(2|V|) to break ties.  A caller-supplied ``phi`` is checked for
    injectivity and compatibility instead.
    """
    xi = covector(xi)
    up, index = orientation(sk, xi)
    cyc = _find_cycle(sk, up)
    if cyc is not None:
        raise CyclicOrientation("orientation has a directed cycle",
                                [sk.vertices[v] for v in cyc])
    nv = sk.num_vertices
    if phi is None:
        indeg = [0] * nv
        for e in up:
            indeg[sk.edges[e].dst] += 1
        level = [0] * nv
        queue = deque(v for v in range(nv) if indeg[v] == 0)
        while queue:
            v = queue.popleft()
            for e in sk.out[v]:
                if e in up:
                    w = sk.edges[e].dst
                    level[w] = max(level[w], level[v] + 1)
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        queue.append(w)
        phi = tuple(Fraction(level[v]) + Fraction(v, 2 * nv) for v in range(nv))
    else:
        phi = tuple(to_fraction(x) for x in phi)
        if len(set(phi)) != nv:
            raise NotPolarizing("phi is not injective")
        for e in up:
            if phi[sk.edges[e].dst] <= phi[sk.edges[e].src]:
                raise NotPolarizing("phi is not compatible with xi", [e])
    return Polarization(sk, xi, index, phi, up)


def betti(sk: OneSkeleton, xi) -> tuple:
    """(b_0, ..., b_d): number of vertices of each index."""
    _, index = orientation(sk, covector(xi))
    b = [0] * (sk.valence + 1)
    for i in index:
        b[i] += 1
    return tuple(b)


# ------------------------------------------------------------ sub-skeleta

@dataclass
class SubSkeleton:
    parent: OneSkeleton
    vertices: frozenset
    edges: frozenset  # closed under reverse

    @property
    def valence(self):
        degs = {sum(1 for e in self.parent.out[v] if e in self.edges) for v in self.vertices}
        return degs.pop() if len(degs) == 1 else None

    def out(self, v) -> list:
        return [e for e in self.parent.out[v] if e in self.edges]

    def normal(self, v) -> list:
        return [e for e in self.parent.out[v] if e not in self.edges]

    def is_totally_geodesic(self) -> bool:
        return geodesic_witness(self) is None

    def as_skeleton(self) -> OneSkeleton:
        """Standalone skeleton with the restricted connection.

        Requires the sub-skeleton to be totally geodesic.
        """
        w = geodesic_witness(self)
        if w is not None:
            raise NotTotallyGeodesic("connection does not preserve the sub-skeleton", w)
        sk = self.parent
        vs = sorted(self.vertices)
        vmap = {v: i for i, v in enumerate(vs)}
        es = sorted(self.edges)
        emap = {e: i for i, e in enumerate(es)}
        edges = [Edge(emap[e], vmap[sk.edges[e].src], vmap[sk.edges[e].dst], emap[sk.edges[e].rev])
                 for e in es]
        conn = [{emap[a]: emap[b] for a, b in sk.theta[e].items() if a in self.edges} for e in es]
        return OneSkeleton(sk.n, [sk.vertices[v] for v in vs], edges,
                           [sk.axial[e] for e in es], [sk.mult[e] for e in es], conn)


def geodesic_witness(sub: SubSkeleton):
    sk = sub.parent
    for e in sub.edges:
        th = sk.theta[e]
        for ei in sub.out(sk.edges[e].src):
            if th[ei] not in sub.edges:
                return [e, ei]
    return None


def induced_subskeleton(sk: OneSkeleton, vertices: Iterable) -> SubSkeleton:
    vs = frozenset(sk.vertex(v) for v in vertices)
    es = frozenset(e.id for e in sk.edges if e.src in vs and e.dst in vs)
    return SubSkeleton(sk, vs, es)


def _components(sk: OneSkeleton, edge_ids) -> list:
    adj = {}
    for e in edge_ids:
        ed = sk.edges[e]
        adj.setdefault(ed.src, []).append(e)
    seen, comps = set(), []
    for start in sorted(adj):
        if start in seen:
            continue
        vs, es, stack = {start}, set(), [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for e in adj.get(v, []):
                es.add(e)
                w = sk.edges[e].dst
                if w not in seen:
                    seen.add(w)
                    vs.add(w)
                    stack.append(w)
        comps.append(SubSkeleton(sk, frozenset(vs), frozenset(es)))
    return comps


def plane_edges(sk: OneSkeleton, alpha, beta) -> list:
    return [e.id for e in sk.edges
            if rank([alpha, beta, sk.axial[e.id]]) == 2]


def subskeleton_by_plane(sk: OneSkeleton, alpha, beta) -> list:
    """Connected components of the edges whose axial lies in span(alpha, beta)."""
    return _components(sk, plane_edges(sk, alpha, beta))


def component_containing(sk: OneSkeleton, alpha, beta, vertex) -> SubSkeleton:
    for comp in subskeleton_by_plane(sk, alpha, beta):
        if vertex in comp.vertices:
            return comp
    raise ValueError("vertex has no edge in that plane")


def axial_planes(sk: OneSkeleton) -> list:
    """Distinct 2-planes spanned by axial pairs at a common vertex."""
    seen = {}
    for p in range(sk.num_vertices):
        for x, y in itertools.combinations(sk.out[p], 2):
            a, b = sk.axial[x], sk.axial[y]
            if not is_independent([a, b]):
                continue
            key = plane_key(a, b)
            if key not in seen:
                seen[key] = (a, b, [x, y])
    return list(seen.values())


@dataclass
class NonCyclicReport:
    nca1: bool
    nca2: bool
    cycle: list | None = None
    plane_witness: dict | None = None

    @property
    def ok(self):
        return self.nca1 and self.nca2


def check_noncyclic(sk: OneSkeleton, xi) -> NonCyclicReport:
    """NCA1: the orientation from xi is acyclic.
    NCA2: every component of every axial-pair plane sub-skeleton has b_0 = 1.
    """
    xi = covector(xi)
    up, _ = orientation(sk, xi)
    cyc = _find_cycle(sk, up)
    report = NonCyclicReport(nca1=cyc is None, nca2=True,
                             cycle=None if cyc is None else [sk.vertices[v] for v in cyc])
    for a, b, pair in axial_planes(sk):
        for comp in subskeleton_by_plane(sk, a, b):
            minima = [v for v in comp.vertices
                      if not any(e not in up for e in comp.out(v))]
            if len(minima) != 1:
                report.nca2 = False
                report.plane_witness = {
                    "plane": [[str(x) for x in a], [str(x) for x in b]],
                    "edges": pair,
                    "component": sorted(sk.vertices[v] for v in comp.vertices),
                    "b0": len(minima),
                }
                return report
    return report


# --------------------------------------------------------------- holonomy

@dataclass
class Holonomy:
    base: int
    domain: tuple        # edge ids the permutations act on
    generators: list     # each a tuple: domain index -> domain index
    order: int | None    # group order, None if the closure cap was hit

    @property
    def trivial(self) -> bool:
        ident = tuple(range(len(self.domain)))
        return all(g == ident for g in self.generators)


def _max_closure():
    try:
        return int(os.environ.get("GKM_MAX_CLOSURE", "1000000"))
    except ValueError:
        return 1000000


def holonomy_generators(sk: OneSkeleton, sub: SubSkeleton | None = None, base=None,
                        normal: bool | None = None) -> Holonomy:
    """Holonomy at ``base`` from fundamental loops of a spanning tree.

    For a sub-skeleton the maps are restricted to its normal edges at the
    base point (the normal holonomy).
    """
    if sub is None:
        sub = SubSkeleton(sk, frozenset(range(sk.num_vertices)),
                          frozenset(e.id for e in sk.edges))
        normal = False if normal is None else normal
    else:
        normal = True if normal is None else normal
        w = geodesic_witness(sub)
        if w is not None:
            raise NotTotallyGeodesic("sub-skeleton is not totally geodesic", w)
    if base is None:
        base = min(sub.vertices)
    base = sk.vertex(base)
    # BFS spanning tree
    tree_edge = {base: None}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for e in sub.out(v):
            w = sk.edges[e].dst
            if w not in tree_edge:
                tree_edge[w] = e
                queue.append(w)

    def path_from_base(v):
        path = []
        while tree_edge[v] is not None:
            e = tree_edge[v]
            path.append(e)
            v = sk.edges[e].src
        return list(reversed(path))

    domain = tuple(sub.normal(base) if normal else sk.out[base])
    pos = {e: i for i, e in enumerate(domain)}
    tree = {e for e in tree_edge.values() if e is not None}
    gens = []
    for e in sorted(sub.edges):
        if e in tree or sk.edges[e].rev in tree or e > sk.edges[e].rev:
            continue
        loop = path_from_base(sk.edges[e].src) + [e] + [
            sk.edges[x].rev for x in reversed(path_from_base(sk.edges[e].dst))
        ]
        perm = []
        for x in domain:
            y = x
            for step in loop:
                y = sk.theta[step][y]
            perm.append(pos[y])
        gens.append(tuple(perm))
    return Holonomy(base, domain, gens, _closure_order(gens, len(domain)))


def _closure_order(gens, size):
    ident = tuple(range(size))
    seen = {ident}
    frontier = [ident]
    cap = _max_closure()
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(h[i] for i in g)
                if gh not in seen:
                    seen.add(gh)
                    if len(seen) > cap:
                        return None
                    nxt.append(gh)
        frontier = nxt
    return len(seen)


# -------------------------------------------------------------- isomorphism

def _normalize(a):
    for x in a:
        if x:
            s = abs(x)
            return tuple(y / s for y in a)
    return tuple(a)


def find_isomorphism(a: OneSkeleton, b: OneSkeleton, up_to_scaling=False,
                     vertex_map: Mapping | None = None):
    """Vertex bijection a -> b matching edges and axials, or None.

    With ``up_to_scaling`` each axial only has to agree up to a positive
    factor.  Multiplicities and connections are not compared.  The search
    backtracks within a connected component; components are matched in
    turn without revisiting earlier choices.
    """
    if (a.n != b.n or a.num_vertices != b.num_vertices
            or len(a.edges) != len(b.edges)):
        return None
    key = _normalize if up_to_scaling else (lambda x: x)

    def labels(sk, v):
        return sorted(key(sk.axial[e]) for e in sk.out[v])

    def extend(mapping, used):
        """Backtracking: match the edges of some mapped vertex whose
        neighbours are not all mapped yet."""
        for v, w in mapping.items():
            pending = [e for e in a.out[v] if a.edges[e].dst not in mapping]
            if pending:
                break
        else:
            return mapping
        e = pending[0]
        t = a.edges[e].dst
        for f in b.out[w]:
            u = b.edges[f].dst
            if u in used or key(b.axial[f]) != key(a.axial[e]) or labels(a, t) != labels(b, u):
                continue
            if not _consistent(a, b, mapping, t, u, key):
                continue
            mapping[t] = u
            used.add(u)
            res = extend(mapping, used)
            if res is not None:
                return res
            del mapping[t]
            used.discard(u)
        return None

    if vertex_map is not None:
        mapping = {a.vertex(k): b.vertex(v) for k, v in vertex_map.items()}
        return mapping if _is_iso(a, b, mapping, key) else None

    mapping = {}
    used = set()
    for root in range(a.num_vertices):
        if root in mapping:
            continue
        # seed each new component of a, then grow it
        for w in range(b.num_vertices):
            if w in used or labels(a, root) != labels(b, w):
                continue
            trial, tused = dict(mapping), set(used)
            trial[root] = w
            tused.add(w)
            res = extend(trial, tused)
            if res is not None:
                mapping, used = res, tused
                break
        else:
            return None
    return mapping if _is_iso(a, b, mapping, key) else None


def _consistent(a, b, mapping, t, u, key):
    """Edges from t to already mapped vertices must exist at u with equal labels."""
    need = sorted((mapping[a.edges[e].dst], key(a.axial[e])) for e in a.out[t]
                  if a.edges[e].dst in mapping)
    have = sorted((b.edges[f].dst, key(b.axial[f])) for f in b.out[u]
                  if b.edges[f].dst in mapping.values())
    return need == have


def _is_iso(a, b, mapping, key):
    if sorted(mapping.values()) != list(range(b.num_vertices)) or len(mapping) != a.num_vertices:
        return False
    ea = sorted((mapping[e.src], mapping[e.dst], key(a.axial[e.id])) for e in a.edges)
    eb = sorted((e.src, e.dst, key(b.axial[e.id])) for e in b.edges)
    return ea == eb


def is_isomorphic(a, b, up_to_scaling=False) -> bool:
    return find_isomorphism(a, b, up_to_scaling) is not None
