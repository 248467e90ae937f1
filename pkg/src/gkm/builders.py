"""Constructors for standard one-skeleta."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, DegenerateTaus, MalformedInput, NotEdgeReflecting
from .exactalg import cov_is_zero, cov_sub, covector, rank
from .skeleton import Edge, OneSkeleton, _solve_two


class _Builder:
    """Accumulates oriented edges in reverse pairs."""

    def __init__(self):
        self.edges, self.axial, self.mult = [], [], []
        self.by_ends = {}

    def add(self, src, dst, fwd, back, m_fwd=1, m_back=1):
        i = len(self.edges)
        self.edges += [Edge(i, src, dst, i + 1), Edge(i + 1, dst, src, i)]
        self.axial += [covector(fwd), covector(back)]
        self.mult += [m_fwd, m_back]
        self.by_ends.setdefault((src, dst), []).append(i)
        self.by_ends.setdefault((dst, src), []).append(i + 1)
        return i

    def edge(self, src, dst):
        (e,) = self.by_ends[(src, dst)]
        return e

    def out(self, nv):
        out = [[] for _ in range(nv)]
        for e in self.edges:
            out[e.src].append(e.id)
        return out


def _zero(n):
    return (Fraction(0),) * n


# ---------------------------------------------------------------- complete

def complete(taus, names=None) -> OneSkeleton:
    """Complete skeleton on N vertices with alpha_ij = tau_j - tau_i.

    The connection along p_i p_j sends p_i p_j to p_j p_i and p_i p_k to
    p_j p_k.  The covectors ``taus`` are kept as the generating class.
    """
    taus = [covector(t) for t in taus]
    if not taus:
        raise DegenerateTaus("need at least one vertex")
    n = len(taus[0])
    if any(len(t) != n for t in taus):
        raise DegenerateTaus("taus have different lengths")
    N = len(taus)
    b = _Builder()
    for i, j in itertools.combinations(range(N), 2):
        a = cov_sub(taus[j], taus[i])
        if cov_is_zero(a):
            raise DegenerateTaus("two taus coincide", [i, j])
        b.add(i, j, a, cov_sub(taus[i], taus[j]))
    conn = []
    for e in b.edges:
        i, j = e.src, e.dst
        th = {}
        for k in range(N):
            if k == i:
                continue
            th[b.edge(i, k)] = b.edge(j, i) if k == j else b.edge(j, k)
        conn.append(th)
    names = names or [f"p{i + 1}" for i in range(N)]
    return OneSkeleton(n, names, b.edges, b.axial, b.mult, conn, generating_class=taus)


# ----------------------------------------------------------------- johnson

def subset_name(S) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


def johnson(n: int, k: int) -> OneSkeleton:
    """Johnson skeleton J(n, k): vertices are k-subsets of {1..n}.

    The edge S -> S - {i} + {j} carries alpha = e_j - e_i.
    """
    if not (isinstance(n, int) and isinstance(k, int)) or not 1 <= k < n:
        raise BadParameters(f"need 1 <= k < n, got n={n}, k={k}")
    subsets = [frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]
    index = {S: i for i, S in enumerate(subsets)}

    def axial(i, j):
        v = [0] * n
        v[j - 1] += 1
        v[i - 1] -= 1
        return v

    b = _Builder()
    label = {}  # oriented edge id -> (i, j) with i in S, j not in S
    for S in subsets:
        for i in sorted(S):
            for j in range(1, n + 1):
                if j in S:
                    continue
                T = (S - {i}) | {j}
                if index[S] < index[T]:
                    e = b.add(index[S], index[T], axial(i, j), axial(j, i))
                    label[e] = (i, j)
                    label[e + 1] = (j, i)
    by_label = {(b.edges[e].src, lab): e for e, lab in label.items()}
    out = b.out(len(subsets))
    conn = []
    for e in b.edges:
        i, j = label[e.id]
        th = {}
        for f in out[e.src]:
            k, l = label[f]
            if k == i and l == j:
                new = (j, i)
            elif k == i:
                new = (j, l)
            elif l == j:
                new = (k, i)
            else:
                new = (k, l)
            th[f] = by_label[(e.dst, new)]
        conn.append(th)
    names = [subset_name(S) for S in subsets]
    return OneSkeleton(n, names, b.edges, b.axial, b.mult, conn)


def johnson_subsets(sk: OneSkeleton) -> list:
    """Recover the k-subsets from Johnson vertex names."""
    out = []
    for name in sk.vertices:
        body = name.strip("{}")
        out.append(frozenset(int(x) for x in body.split(",") if x))
    return out


# ----------------------------------------------------------------- product

def product(g1: OneSkeleton, g2: OneSkeleton) -> OneSkeleton:
    """Product skeleton on V1 x V2 with concatenated coordinates."""
    n1, n2 = g1.n, g2.n
    nv2 = g2.num_vertices

    def vid(p, q):
        return p * nv2 + q

    b = _Builder()
    first = {}   # (edge of g1, q) -> id
    second = {}  # (p, edge of g2) -> id
    for e in g1.undirected():
        for q in range(nv2):
            i = b.add(vid(e.src, q), vid(e.dst, q),
                      g1.axial[e.id] + _zero(n2), g1.axial[e.rev] + _zero(n2),
                      g1.mult[e.id], g1.mult[e.rev])
            first[(e.id, q)], first[(e.rev, q)] = i, i + 1
    for f in g2.undirected():
        for p in range(g1.num_vertices):
            i = b.add(vid(p, f.src), vid(p, f.dst),
                      _zero(n1) + g2.axial[f.id], _zero(n1) + g2.axial[f.rev],
                      g2.mult[f.id], g2.mult[f.rev])
            second[(p, f.id)], second[(p, f.rev)] = i, i + 1
    inv_first = {v: k for k, v in first.items()}
    inv_second = {v: k for k, v in second.items()}
    out = b.out(g1.num_vertices * nv2)
    conn = []
    for e in b.edges:
        th = {}
        p, q = divmod(e.src, nv2)
        if e.id in inv_first:
            ge, _ = inv_first[e.id]
            p2 = g1.edges[ge].dst
            for f in out[e.src]:
                if f in inv_first:
                    th[f] = first[(g1.theta[ge][inv_first[f][0]], q)]
                else:
                    th[f] = second[(p2, inv_second[f][1])]
        else:
            _, gf = inv_second[e.id]
            q2 = g2.edges[gf].dst
            for f in out[e.src]:
                if f in inv_second:
                    th[f] = second[(p, g2.theta[gf][inv_second[f][1]])]
                else:
                    th[f] = first[(inv_first[f][0], q2)]
        conn.append(th)
    names = [f"{a}|{c}" for a in g1.vertices for c in g2.vertices]
    return OneSkeleton(n1 + n2, names, b.edges, b.axial, b.mult, conn)


def point(n: int = 0) -> OneSkeleton:
    return OneSkeleton(n, ["*"], [], [], [], [])


def edge_graph(sign: int = 1) -> OneSkeleton:
    """L+ (sign=1) or L- (sign=-1): two vertices 0, 1 in dimension one."""
    if sign not in (1, -1):
        raise BadParameters("sign must be +1 or -1")
    b = _Builder()
    b.add(0, 1, [sign], [-sign])
    conn = [{0: 1}, {1: 0}]
    return OneSkeleton(1, ["0", "1"], b.edges, b.axial, b.mult, conn)


# ---------------------------------------------------------------- polytope

@dataclass
class Polytope:
    n: int
    coords: list   # list of covectors
    edges: list    # list of (i, j)
    names: list | None = None


def polytope_skeleton(P: Polytope) -> OneSkeleton:
    """Edge skeleton of a polytope with alpha_pq = Phi(q) - Phi(p).

    The connection along p -> p' sends p -> q to the unique edge p' -> q'
    (q' != p) coplanar with both and with positive lambda.
    """
    coords = [covector(c) for c in P.coords]
    nv = len(coords)
    b = _Builder()
    for i, j in P.edges:
        if not (0 <= i < nv and 0 <= j < nv) or i == j:
            raise MalformedInput(f"bad polytope edge {[i, j]}")
        b.add(i, j, cov_sub(coords[j], coords[i]), cov_sub(coords[i], coords[j]))
    out = b.out(nv)
    degs = {len(o) for o in out}
    if len(degs) > 1:
        raise NotEdgeReflecting("vertex degrees differ", sorted(degs))
    conn = []
    for e in b.edges:
        w = b.axial[e.id]
        th = {e.id: e.rev}
        for f in out[e.src]:
            if f == e.id:
                continue
            v = b.axial[f]
            cands = []
            for g in out[e.dst]:
                if g == e.rev:
                    continue
                u = b.axial[g]
                if rank([w, v, u]) <= 2:
                    sol = _solve_two(u, v, w)
                    if sol is not None and sol[0] > 0:
                        cands.append(g)
            if len(cands) != 1:
                raise NotEdgeReflecting("no unique coplanar partner", [e.id, f])
            th[f] = cands[0]
        if len(set(th.values())) != len(th):
            raise NotEdgeReflecting("partner map is not a bijection", [e.id])
        conn.append(th)
    names = P.names or [str(i) for i in range(nv)]
    return OneSkeleton(P.n, names, b.edges, b.axial, b.mult, conn)


def octahedron_polytope() -> Polytope:
    coords, names = [], []
    for i in range(3):
        for s in (1, -1):
            v = [0, 0, 0]
            v[i] = s
            coords.append(v)
            names.append(("+" if s > 0 else "-") + "xyz"[i])
    edges = [(a, b) for a, b in itertools.combinations(range(6), 2) if a // 2 != b // 2]
    return Polytope(3, coords, edges, names)


def cube_polytope() -> Polytope:
    coords = [list(c) for c in itertools.product((0, 1), repeat=3)]
    edges = [(a, b) for a, b in itertools.combinations(range(8), 2)
             if sum(x != y for x, y in zip(coords[a], coords[b])) == 1]
    return Polytope(3, coords, edges, ["".join(map(str, c)) for c in coords])


def octahedron() -> OneSkeleton:
    return polytope_skeleton(octahedron_polytope())


def cube() -> OneSkeleton:
    return polytope_skeleton(cube_polytope())


# ---------------------------------------------------------------- fixtures

def _swap_connection(b: _Builder):
    """Connection on a 2-vertex skeleton: along e, swap the other edges."""
    conn = []
    fwd = [e.id for e in b.edges if e.src == 0]
    for e in b.edges:
        if e.src == 0:
            others = [f for f in fwd if f != e.id]
            th = {e.id: e.rev, others[0]: b.edges[others[1]].rev,
                  others[1]: b.edges[others[0]].rev}
        else:
            base = e.rev
            others = [f for f in fwd if f != base]
            th = {e.id: base, b.edges[others[1]].rev: others[0],
                  b.edges[others[0]].rev: others[1]}
        conn.append(th)
    return conn


def s6() -> OneSkeleton:
    """Two vertices joined by three edges with axials a+b, -a, -b."""
    b = _Builder()
    b.add(0, 1, [1, 1], [-1, -1])
    b.add(0, 1, [-1, 0], [1, 0])
    b.add(0, 1, [0, -1], [0, 1])
    return OneSkeleton(2, ["p", "q"], b.edges, b.axial, b.mult, _swap_connection(b))


def _cycle_connection(b: _Builder, nv):
    out = b.out(nv)
    conn = []
    for e in b.edges:
        (other,) = [f for f in out[e.src] if f != e.id]
        (target,) = [f for f in out[e.dst] if f != e.rev]
        conn.append({e.id: e.rev, other: target})
    return conn


def ramified_cover(k: int = 2) -> OneSkeleton:
    """Cycle of length 4k whose axials wrap the square's k times."""
    if k < 1:
        raise BadParameters("k must be positive")
    square = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    N = 4 * k
    b = _Builder()
    for i in range(N):
        a = square[i % 4]
        b.add(i, (i + 1) % N, a, (-a[0], -a[1]))
    return OneSkeleton(2, [f"v{i}" for i in range(N)], b.edges, b.axial, b.mult,
                       _cycle_connection(b, N))


def football(m: int = 1, n: int = 2) -> OneSkeleton:
    """Single edge p -> q with alpha_p = (n-m)/n, alpha_q = (m-n)/m and
    multiplicities n and m."""
    if m <= 0 or n <= 0 or m == n:
        raise BadParameters("need distinct positive m, n")
    b = _Builder()
    b.add(0, 1, [Fraction(n - m, n)], [Fraction(m - n, m)], n, m)
    return OneSkeleton(1, ["p", "q"], b.edges, b.axial, b.mult, [{0: 1}, {1: 0}])


FIXTURES = {
    "octahedron": octahedron,
    "cube": cube,
    "s6": s6,
    "ramified": ramified_cover,
    "football": football,
    "edge": edge_graph,
}
