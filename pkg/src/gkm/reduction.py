"""Symplectic-style reduction of one-skeleta at a regular level.

The reduced skeleton at a regular value c has one vertex per edge crossing
the level.  Two such vertices are joined when their edges lie on a common
plane cycle; its axials live in the annihilator of xi, written in the
coordinates y_i = e*_i - xi_i x (i != j), where j is the first index with
xi_j != 0 and x = e*_j / xi_j.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .builders import edge_graph, product
from .cohomology import CohomologyClass, basis, coordinates, class_witness
from .errors import (
    BadParameters,
    ComponentBettiViolation,
    CriticalValue,
    DegreeMismatch,
    MultipleCriticalPoints,
    NotGeneric,
    NotThreeIndependent,
)
from .exactalg import (
    Polynomial,
    graded_dim,
    kernel_basis,
    pairing,
    project_along,
    rank,
    to_fraction,
)
from .skeleton import (
    Edge,
    OneSkeleton,
    Polarization,
    find_isomorphism,
    generic_witness,
    holonomy_generators,
    independence_level,
    induced_subskeleton,
    pair_multiplicities,
    plane_edges,
    polarize,
)
from .surgery import BlowUp, blow_up


def pivot_index(xi) -> int:
    for j, x in enumerate(xi):
        if x:
            return j
    raise BadParameters("xi is zero")


def to_y(sigma, j):
    """Coordinates of an annihilator element in the y basis."""
    return tuple(s for i, s in enumerate(sigma) if i != j)


@dataclass
class ReducedSkeleton:
    skeleton: OneSkeleton       # down connection
    skeleton_up: OneSkeleton    # up connection
    source: OneSkeleton
    pol: Polarization
    c: Fraction
    crossing: tuple             # reduced vertex -> Gamma edge id, oriented upper -> lower
    companion: tuple            # reduced edge -> Gamma edge at the upper vertex
    ambient: tuple              # reduced edge -> axial as a covector on the full space
    cycle: tuple                # reduced edge -> frozenset of Gamma edges of the plane cycle
    pivot: int

    def upper(self, v):
        return self.source.edges[self.crossing[v]].src

    def lower(self, v):
        return self.source.edges[self.crossing[v]].dst

    def provenance(self) -> dict:
        sk = self.source
        return {self.skeleton.vertices[v]: [sk.vertices[self.lower(v)], sk.vertices[self.upper(v)]]
                for v in range(self.skeleton.num_vertices)}


def _walk(sk, plane, start_edge):
    """Walk a 2-valent plane component starting along ``start_edge``."""
    adj = {}
    for e in plane:
        adj.setdefault(sk.edges[e].src, []).append(e)
    path = [start_edge]
    seen = {start_edge}
    while True:
        last = sk.edges[path[-1]]
        nxt = [e for e in adj.get(last.dst, []) if e != last.rev]
        if len(adj.get(last.dst, [])) != 2:
            raise NotThreeIndependent("plane component is not a cycle", [last.dst])
        e = nxt[0]
        if e == start_edge:
            return path
        if e in seen:
            raise NotThreeIndependent("plane component is not a simple cycle", [e])
        seen.add(e)
        path.append(e)


def reduce(sk: OneSkeleton, pol: Polarization, c, check_generic: bool = True) -> ReducedSkeleton:
    """Reduced skeleton at the regular value ``c``."""
    c = to_fraction(c)
    phi = pol.phi
    if c in phi:
        raise CriticalValue("c is a critical value", [sk.vertices[phi.index(c)]])
    if independence_level(sk) < min(3, sk.valence):
        raise NotThreeIndependent("skeleton is not three-independent")
    xi = pol.xi
    if check_generic:
        w = generic_witness(sk, xi)
        if w is not None:
            raise NotGeneric("xi is not generic", w)
    j = pivot_index(xi)

    def crosses(e):
        a, b = phi[sk.edges[e].src], phi[sk.edges[e].dst]
        return (a - c) * (b - c) < 0

    crossing = sorted(
        (e.id for e in sk.edges if crosses(e.id) and phi[e.src] > c),
        key=lambda e: (phi[sk.edges[e].src], e),
    )
    vid = {}
    for i, e in enumerate(crossing):
        vid[e] = i
        vid[sk.edges[e].rev] = i

    # reduced oriented edges keyed by (reduced vertex, companion)
    info = {}
    for v, g in enumerate(crossing):
        u = sk.edges[g].src
        for h in sk.out[u]:
            if h == g:
                continue
            plane = plane_edges(sk, sk.axial[g], sk.axial[h])
            cyc = _walk(sk, plane, g)
            hits = [e for e in cyc if crosses(e)]
            if len(hits) != 2:
                raise ComponentBettiViolation(
                    "plane cycle does not cross the level exactly twice",
                    sorted({sk.vertices[sk.edges[e].src] for e in cyc}))
            k = next(i for i, e in enumerate(cyc) if i > 0 and crosses(e))
            down = cyc[: k + 1]          # u -> w -> ... -> upper end of the other crossing
            up = [sk.edges[e].rev for e in reversed(cyc[k + 1:])]
            other = cyc[k]               # oriented lower -> upper
            target = vid[other]
            u2 = sk.edges[other].dst
            back = cyc[(k + 1) % len(cyc)]
            if up and up[0] != h:
                raise ComponentBettiViolation("cycle walk is inconsistent", [g, h])
            info[(v, h)] = dict(target=target, back=back, down=down, up=up,
                                axial=project_along(sk.axial[h], sk.axial[g], xi),
                                cycle=frozenset(cyc) | frozenset(sk.edges[e].rev for e in cyc),
                                upper2=u2)

    keys = sorted(info)
    eid = {}
    edges, ambient, comp, cyc_of = [], [], [], []
    for key in keys:
        if key in eid:
            continue
        d = info[key]
        back_key = (d["target"], d["back"])
        if back_key not in info or info[back_key]["target"] != key[0]:
            raise ComponentBettiViolation("reduced edge has no reverse", [crossing[key[0]]])
        i = len(edges)
        eid[key], eid[back_key] = i, i + 1
        edges += [Edge(i, key[0], d["target"], i + 1), Edge(i + 1, d["target"], key[0], i)]
        ambient += [d["axial"], info[back_key]["axial"]]
        comp += [key[1], back_key[1]]
        cyc_of += [d["cycle"], info[back_key]["cycle"]]

    def connection(which):
        conn = []
        for e in edges:
            key = (e.src, comp[e.id])
            d = info[key]
            path = d[which]
            g = crossing[e.src]
            th = {}
            for h in sk.out[sk.edges[g].src]:
                if h == g:
                    continue
                if h == key[1]:
                    th[eid[(e.src, h)]] = e.rev
                    continue
                x = h
                for step in path:
                    x = sk.theta[step][x]
                th[eid[(e.src, h)]] = eid[(e.dst, x)]
            conn.append(th)
        return conn

    y_axial = [to_y(a, j) for a in ambient]
    mult = [None] * len(edges)
    for e in edges:
        if e.id < e.rev:
            mult[e.id], mult[e.rev] = pair_multiplicities(y_axial[e.id], y_axial[e.rev])
    names = []
    for g in crossing:
        ed = sk.edges[g]
        name = f"{sk.vertices[ed.dst]}-{sk.vertices[ed.src]}"
        if name in names:
            name = f"{name}#{g}"
        names.append(name)
    n = sk.n - 1
    down = OneSkeleton(n, names, edges, y_axial, mult, connection("down"))
    up = OneSkeleton(n, names, edges, y_axial, mult, connection("up"))
    return ReducedSkeleton(down, up, sk, pol, c, tuple(crossing), tuple(comp),
                           tuple(ambient), tuple(cyc_of), j)


# ----------------------------------------------------------------- levels

def regular_levels(pol: Polarization) -> list:
    """Midpoints between consecutive critical values."""
    vals = sorted(pol.phi)
    return [(a + b) / 2 for a, b in zip(vals, vals[1:])]


def levels_around(pol: Polarization, p):
    """Regular values c < phi(p) < c' with no other critical value between."""
    vals = sorted(pol.phi)
    i = vals.index(pol.phi[p])
    lo = (vals[i - 1] + vals[i]) / 2 if i > 0 else vals[i] - 1
    hi = (vals[i] + vals[i + 1]) / 2 if i + 1 < len(vals) else vals[i] + 1
    return lo, hi


def crossing_dims_check(sk: OneSkeleton, pol: Polarization, p, m: int, check_generic=True):
    """(dim H^2m at c' - dim H^2m at c, lambda_{m-r} - lambda_{m-s}) around p."""
    p = sk.vertex(p)
    lo, hi = levels_around(pol, p)
    below = reduce(sk, pol, lo, check_generic)
    above = reduce(sk, pol, hi, check_generic)
    r = pol.index[p]
    s = sk.valence - r
    lhs = len(basis(above.skeleton, m)) - len(basis(below.skeleton, m))
    rhs = graded_dim(m - r, sk.n) - graded_dim(m - s, sk.n)
    return lhs, rhs


# ------------------------------------------------------------- flip-flop

@dataclass
class FlipFlop:
    below: ReducedSkeleton
    above: ReducedSkeleton
    blowup_below: BlowUp
    blowup_above: BlowUp
    mapping: dict | None          # vertex of blowup_below -> vertex of blowup_above
    holonomy_trivial: tuple       # (below, above)
    r: int
    s: int

    @property
    def isomorphic(self) -> bool:
        return self.mapping is not None


def _center(R: ReducedSkeleton, p0):
    return [v for v in range(R.skeleton.num_vertices)
            if p0 in (R.upper(v), R.lower(v))]


def _fiber_key(R: ReducedSkeleton, p0, v, edge):
    """Unordered pair of Gamma edges at p0 labelling a fiber vertex."""
    sk = R.source
    mine = R.crossing[v]
    mine = mine if sk.edges[mine].src == p0 else sk.edges[mine].rev
    others = [e for e in R.cycle[edge] if sk.edges[e].src == p0 and e != mine]
    (other,) = others
    return frozenset((mine, other)), other


def flip_flop(sk: OneSkeleton, pol: Polarization, p0, check_generic=True) -> FlipFlop:
    """Blow up both reduced skeleta around p0 along the complete pieces
    coming from p0 and compare the results."""
    p0 = sk.vertex(p0)
    if not 0 < pol.index[p0] < sk.valence:
        raise BadParameters("flip-flop needs a vertex of index strictly between 0 and d",
                            [sk.vertices[p0]])
    lo, hi = levels_around(pol, p0)
    vals = sorted(pol.phi)
    if sum(1 for x in vals if lo < x < hi) != 1:
        raise MultipleCriticalPoints("more than one critical point between the levels")
    R = reduce(sk, pol, lo, check_generic)
    R2 = reduce(sk, pol, hi, check_generic)
    xi = pol.xi
    blown = []
    keys = []
    trivial = []
    for red, conn_sk in ((R, R.skeleton_up), (R2, R2.skeleton)):
        center = induced_subskeleton(conn_sk, _center(red, p0))
        weights = {}
        for v in center.vertices:
            for e in center.normal(v):
                _, other = _fiber_key(red, p0, v, e)
                weights[(v, e)] = abs(pairing(sk.axial[other], xi))
        if center.edges:
            trivial.append(all(
                holonomy_generators(conn_sk, center, base=b).trivial
                for b in [min(center.vertices)]))
        else:
            trivial.append(True)
        B = blow_up(conn_sk, center, weights)
        key = {}
        for v in range(B.result.num_vertices):
            w = B.beta[v]
            if w in center.vertices:
                continue
            key[v] = ("edge", frozenset((red.crossing[w], sk.edges[red.crossing[w]].rev)))
        for pv, verts in B.fiber.items():
            for v, e in verts:
                key[v] = ("fiber", _fiber_key(red, p0, pv, e)[0])
        blown.append(B)
        keys.append(key)
    inv = {k: v for v, k in keys[1].items()}
    mapping = None
    if set(keys[0].values()) == set(inv):
        cand = {v: inv[k] for v, k in keys[0].items()}
        mapping = find_isomorphism(blown[0].result, blown[1].result, vertex_map=cand)
    r = pol.index[p0]
    return FlipFlop(R, R2, blown[0], blown[1], mapping, tuple(trivial), r, sk.valence - r)


# -------------------------------------------------------------------- cut

@dataclass
class Cut:
    skeleton: OneSkeleton
    reduced: ReducedSkeleton
    side: str

    def provenance(self) -> dict:
        return self.reduced.provenance()


def cut(sk: OneSkeleton, pol: Polarization, c, side: str = "le", check_generic=True) -> Cut:
    """The part of the skeleton on one side of the level c, closed off by
    the reduced skeleton, as a skeleton over the original space."""
    if side not in ("le", "ge"):
        raise BadParameters("side must be 'le' or 'ge'")
    c = to_fraction(c)
    lo, hi = min(pol.phi), max(pol.phi)
    a = hi - lo + 1
    if side == "le" and c >= hi + 1 or side == "ge" and c <= lo - 1:
        raise BadParameters("c is outside the range of the cut")
    sign = 1 if side == "le" else -1
    P = product(sk, edge_graph(sign))
    phi2 = []
    for p in range(sk.num_vertices):
        phi2 += [pol.phi[p], pol.phi[p] + sign * a]
    pol2 = polarize(P, tuple(pol.xi) + (Fraction(1),), phi=phi2)
    R = reduce(P, pol2, c, check_generic)
    axial = [a_[:-1] for a_ in R.ambient]
    mult = [None] * len(axial)
    for e in R.skeleton.edges:
        if e.id < e.rev:
            mult[e.id], mult[e.rev] = pair_multiplicities(axial[e.id], axial[e.rev])
    names = []
    for v in range(R.skeleton.num_vertices):
        lo_v, up_v = R.lower(v), R.upper(v)
        if lo_v // 2 == up_v // 2:
            names.append(sk.vertices[lo_v // 2])
        else:
            names.append(f"{sk.vertices[lo_v // 2]}-{sk.vertices[up_v // 2]}")
    out = OneSkeleton(sk.n, names, R.skeleton.edges, axial, mult, R.skeleton.theta)
    return Cut(out, R, side)


# ----------------------------------------------------------------- Kirwan

def _projection_images(R: ReducedSkeleton, alpha):
    """Images of the coordinate covectors under projection along alpha."""
    n = R.source.n
    xi = R.pol.xi
    imgs = []
    for i in range(n):
        e = tuple(Fraction(int(k == i)) for k in range(n))
        imgs.append(Polynomial.linear(to_y(project_along(e, alpha, xi), R.pivot)))
    return imgs


def kirwan(f: CohomologyClass, R: ReducedSkeleton, m: int | None = None) -> CohomologyClass:
    """Restrict a class to the reduced skeleton."""
    if f.skeleton is not R.source:
        raise ValueError("class does not live on the reduced skeleton's source")
    if m is not None and f.degree != m:
        raise DegreeMismatch(f"class has degree {f.degree}, expected {m}")
    sk = R.source
    vals = []
    for v, g in enumerate(R.crossing):
        imgs = _projection_images(R, sk.axial[g])
        vals.append(f.values[R.lower(v)].substitute(imgs) if f.values[R.lower(v)]
                    else Polynomial.zero(sk.n - 1))
    return CohomologyClass(R.skeleton, vals, f.degree)


@dataclass
class KirwanReport:
    m: int
    source_dim: int
    rank: int
    target_dim: int
    kernel_dim: int
    kernel_formula: int
    split_ok: bool


def kirwan_kernel_dim(R: ReducedSkeleton, m: int) -> int:
    """Predicted kernel dimension in degree m."""
    sk, pol, c = R.source, R.pol, R.c
    n, d = sk.n, sk.valence
    total = 0
    for q in range(sk.num_vertices):
        if pol.phi[q] > c:
            total += graded_dim(m - pol.index[q], n)
        else:
            total += graded_dim(m - d + pol.index[q], n)
    return total


def split_at_level(h: CohomologyClass, R: ReducedSkeleton):
    """Split h into the parts above and below the level."""
    sk = h.skeleton
    zero = Polynomial.zero(sk.n)
    plus = [f if R.pol.phi[v] > R.c else zero for v, f in enumerate(h.values)]
    minus = [f if R.pol.phi[v] < R.c else zero for v, f in enumerate(h.values)]
    return CohomologyClass(sk, plus, h.degree), CohomologyClass(sk, minus, h.degree)


def kirwan_report(R: ReducedSkeleton, m: int) -> KirwanReport:
    src = basis(R.source, m)
    images = [kirwan(f, R) for f in src]
    cols = coordinates(images, m) if images else []
    # rows of ``cols`` are image vectors; rank is the same either way
    rk = rank(cols) if cols else 0
    target = len(basis(R.skeleton, m))
    ker = kernel_basis(_transpose(cols, len(src)), len(src)) if src else []
    split_ok = True
    for vec in ker:
        h = None
        for coef, f in zip(vec, src):
            if coef:
                h = f * coef if h is None else h + f * coef
        if h is None:
            continue
        plus, minus = split_at_level(h, R)
        if class_witness(R.source, plus.values) is not None or \
                class_witness(R.source, minus.values) is not None:
            split_ok = False
    return KirwanReport(m, len(src), rk, target, len(ker), kirwan_kernel_dim(R, m), split_ok)


def _transpose(rows, ncols):
    if not rows:
        return []
    return [[rows[j][i] for j in range(ncols)] for i in range(len(rows[0]))]
