"""Blowing up a one-skeleton along a totally geodesic sub-skeleton."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cohomology import CohomologyClass, basis, class_witness, power_coefficients
from .errors import (
    BadCenter,
    BadWeights,
    Condition2Violated,
    DecompositionFailure,
    NotAClass,
    NotTotallyGeodesic,
)
from .exactalg import Polynomial, cov_scale, cov_sub, ratio, restrict_to_hyperplane, to_fraction
from .skeleton import Edge, OneSkeleton, SubSkeleton, geodesic_witness, induced_subskeleton


@dataclass
class BlowUp:
    result: OneSkeleton
    original: OneSkeleton
    center: SubSkeleton
    beta: tuple          # new vertex -> original vertex
    fiber: dict          # center vertex -> list of (new vertex, normal edge)
    weights: dict        # (center vertex, normal edge) -> n
    thom: CohomologyClass

    @property
    def codim(self) -> int:
        """Number s of normal edges at each center vertex."""
        return len(next(iter(self.fiber.values()))) if self.fiber else 0

    def fiber_taus(self, p) -> list:
        sk = self.original
        return [cov_scale(1 / self.weights[(p, a)], sk.axial[a]) for _, a in self.fiber[p]]

    def sidecar(self) -> dict:
        return {
            "beta": {self.result.vertices[v]: self.original.vertices[w]
                     for v, w in enumerate(self.beta)},
            "thom": self.thom.to_json(),
        }


def _weights(sk, center, normal, weights):
    out = {}
    for p in sorted(center.vertices):
        for a in normal[p]:
            if weights is None:
                w = 1
            elif isinstance(weights, Mapping):
                key = (p, a)
                if key not in weights:
                    key = (sk.vertices[p], a)
                if key not in weights:
                    raise BadWeights("missing weight", [sk.vertices[p], a])
                w = weights[key]
            elif callable(weights):
                w = weights(p, a)
            else:
                w = weights
            w = to_fraction(w)
            if w <= 0:
                raise BadWeights("weights must be positive", [sk.vertices[p], a])
            out[(p, a)] = w
    return out


def blow_up(sk: OneSkeleton, center, weights=None) -> BlowUp:
    """Replace each center vertex p by one vertex per normal edge at p.

    ``center`` is a SubSkeleton or an iterable of vertices (the induced
    sub-skeleton is used).  ``weights`` is a positive number, a mapping
    (p, normal edge) -> n, or a callable; default 1.
    """
    if not isinstance(center, SubSkeleton):
        center = induced_subskeleton(sk, center)
    w = geodesic_witness(center)
    if w is not None:
        raise NotTotallyGeodesic("center is not totally geodesic", w)
    V0 = center.vertices
    if not V0:
        raise BadCenter("empty center")
    normal = {p: center.normal(p) for p in V0}
    sizes = {len(v) for v in normal.values()}
    if len(sizes) != 1 or 0 in sizes:
        raise BadCenter("center must have constant positive codimension")
    for p, es in normal.items():
        for a in es:
            if sk.edges[a].dst in V0:
                raise BadCenter("normal edge ends in the center", [a])
    n_ = _weights(sk, center, normal, weights)
    for e in center.edges:
        src = sk.edges[e].src
        for a in normal[src]:
            b = sk.theta[e][a]
            if n_[(src, a)] != n_[(sk.edges[e].dst, b)]:
                raise BadWeights("weights differ across a center edge", [e, a])
            diff = cov_sub(sk.axial[b], sk.axial[a])
            if any(diff) and ratio(diff, sk.axial[e]) is None:
                raise Condition2Violated("normal axials differ by a non-multiple", [e, a])

    V2 = [v for v in range(sk.num_vertices) if v not in V0]
    names, beta = [], []
    new_id = {}
    for v in V2:
        new_id[v] = len(names)
        names.append(sk.vertices[v])
        beta.append(v)
    fiber = {}
    used = set(names)
    for p in sorted(V0):
        fiber[p] = []
        for a in normal[p]:
            name = f"{sk.vertices[p]}>{sk.vertices[sk.edges[a].dst]}"
            if name in used:
                name = f"{name}#{a}"
            used.add(name)
            new_id[(p, a)] = len(names)
            fiber[p].append((len(names), a))
            names.append(name)
            beta.append(p)

    edges, axial, mult = [], [], []

    def add(src, dst, fwd, back, mf, mb):
        i = len(edges)
        edges.extend([Edge(i, src, dst, i + 1), Edge(i + 1, dst, src, i)])
        axial.extend([fwd, back])
        mult.extend([mf, mb])
        return i

    type2 = {}      # original oriented edge -> new id (both ends in V2)
    type3 = {}      # (p, a) -> new edge id from (p, a) to dst(a)
    vertical = {}   # (p, a, b) -> new edge id from (p, a) to (p, b)
    horizontal = {}  # (p, a, e) -> new edge id from (p, a) along center edge e
    for e in sk.undirected():
        if e.src in V0 or e.dst in V0:
            continue
        i = add(new_id[e.src], new_id[e.dst], sk.axial[e.id], sk.axial[e.rev],
                sk.mult[e.id], sk.mult[e.rev])
        type2[e.id], type2[e.rev] = i, i + 1
    for p in sorted(V0):
        for a in normal[p]:
            na = n_[(p, a)]
            q = sk.edges[a].dst
            rev = sk.edges[a].rev
            i = add(new_id[(p, a)], new_id[q], cov_scale(1 / na, sk.axial[a]), sk.axial[rev],
                    sk.mult[a] * na, sk.mult[rev])
            type3[(p, a)] = i
        ns = normal[p]
        for x in range(len(ns)):
            for y in range(x + 1, len(ns)):
                a, b = ns[x], ns[y]
                na, nb = n_[(p, a)], n_[(p, b)]
                fwd = cov_sub(sk.axial[b], cov_scale(nb / na, sk.axial[a]))
                back = cov_sub(sk.axial[a], cov_scale(na / nb, sk.axial[b]))
                i = add(new_id[(p, a)], new_id[(p, b)], fwd, back, na, nb)
                vertical[(p, a, b)], vertical[(p, b, a)] = i, i + 1
    for e in sorted(center.edges):
        ed = sk.edges[e]
        if e > ed.rev:
            continue
        for a in normal[ed.src]:
            b = sk.theta[e][a]
            i = add(new_id[(ed.src, a)], new_id[(ed.dst, b)], sk.axial[e], sk.axial[ed.rev],
                    sk.mult[e], sk.mult[ed.rev])
            horizontal[(ed.src, a, e)] = i
            horizontal[(ed.dst, b, ed.rev)] = i + 1

    def psi(p, a):
        """E_p -> edges at the new vertex (p, a)."""
        m = {}
        for g in sk.out[p]:
            if g in center.edges:
                m[g] = horizontal[(p, a, g)]
            elif g == a:
                m[g] = type3[(p, a)]
            else:
                m[g] = vertical[(p, a, g)]
        return m

    def iota(q):
        """E_q -> edges at q in the blow-up, for q outside the center."""
        m = {}
        for g in sk.out[q]:
            dst = sk.edges[g].dst
            if dst in V0:
                r = sk.edges[g].rev
                m[g] = edges[type3[(dst, r)]].rev
            else:
                m[g] = type2[g]
        return m

    def conjugate(src_map, theta, dst_map):
        inv = {v: k for k, v in src_map.items()}
        return {new: dst_map[theta[old]] for new, old in inv.items()}

    conn = [None] * len(edges)
    for g, i in type2.items():
        conn[i] = conjugate(iota(sk.edges[g].src), sk.theta[g], iota(sk.edges[g].dst))
    for (p, a), i in type3.items():
        q = sk.edges[a].dst
        conn[i] = conjugate(psi(p, a), sk.theta[a], iota(q))
        conn[edges[i].rev] = conjugate(iota(q), sk.theta[sk.edges[a].rev], psi(p, a))
    for (p, a, e), i in horizontal.items():
        b = sk.theta[e][a]
        conn[i] = conjugate(psi(p, a), sk.theta[e], psi(sk.edges[e].dst, b))
    for (p, a, b), i in vertical.items():
        swap = {g: g for g in sk.out[p]}
        swap[a], swap[b] = b, a
        conn[i] = conjugate(psi(p, a), swap, psi(p, b))

    result = OneSkeleton(sk.n, names, edges, axial, mult, conn)
    values = [Polynomial.zero(sk.n)] * len(names)
    for p in fiber:
        for v, a in fiber[p]:
            values[v] = Polynomial.linear(cov_scale(1 / n_[(p, a)], sk.axial[a]))
    thom = CohomologyClass(result, values, 1)
    return BlowUp(result, sk, center, tuple(beta), fiber, n_, thom)


def pull_back(B: BlowUp, g: CohomologyClass) -> CohomologyClass:
    return CohomologyClass(B.result, [g.values[B.beta[v]] for v in range(B.result.num_vertices)],
                           g.degree)


def center_class(B: BlowUp, values: Mapping, k: int, degree: int) -> CohomologyClass:
    """tau^k times a class on the center, extended by zero."""
    out = [Polynomial.zero(B.result.n)] * B.result.num_vertices
    for p, verts in B.fiber.items():
        f = values[p]
        if not f:
            continue
        for v, _ in verts:
            out[v] = f * B.thom.values[v] ** k
    return CohomologyClass(B.result, out, degree)


@dataclass
class BlowUpDecomposition:
    base: CohomologyClass   # g on the original skeleton
    parts: list             # parts[k-1][p] = f_{m-k}(p), k = 1..s-1

    def recompose(self, B: BlowUp) -> CohomologyClass:
        m = self.base.degree
        total = pull_back(B, self.base)
        for k, part in enumerate(self.parts, start=1):
            total = total + center_class(B, part, k, m)
        return CohomologyClass(B.result, total.values, m)


def blowup_cohomology_decompose(f: CohomologyClass, B: BlowUp) -> BlowUpDecomposition:
    """Split f = beta* g + sum_{k=1}^{s-1} tau^k f_{m-k}."""
    if f.skeleton is not B.result:
        raise ValueError("class does not live on the blow-up")
    w = class_witness(B.result, f.values)
    if w is not None:
        raise NotAClass("edge condition fails", [w])
    sk = B.original
    m = f.degree
    s = B.codim
    parts = [dict() for _ in range(s - 1)]
    base = [None] * sk.num_vertices
    for p, verts in B.fiber.items():
        try:
            coeffs = power_coefficients(B.fiber_taus(p), [f.values[v] for v, _ in verts], m)
        except NotAClass:
            raise DecompositionFailure("fiber restriction is not a class",
                                       [sk.vertices[p]]) from None
        base[p] = coeffs[0]
        for k in range(1, s):
            parts[k - 1][p] = coeffs[k]
    for v in range(B.result.num_vertices):
        if B.beta[v] not in B.fiber:
            base[B.beta[v]] = f.values[v]
    g = CohomologyClass(sk, base, m)
    if class_witness(sk, g.values) is not None:
        raise DecompositionFailure("base part is not a class", [class_witness(sk, g.values)])
    center = B.center
    for part in parts:
        for e in center.edges:
            ed = sk.edges[e]
            d = part[ed.src] - part[ed.dst]
            if d and class_witness_edge(sk, d, e):
                raise DecompositionFailure("center part is not a class", [e])
    dec = BlowUpDecomposition(g, parts)
    if dec.recompose(B) != f:
        raise DecompositionFailure("recomposition mismatch")
    return dec


def class_witness_edge(sk, diff, e) -> bool:
    return bool(restrict_to_hyperplane(diff, sk.axial[e]))


def blowup_dimension_identity(B: BlowUp, m: int):
    """(dim H^2m(blow-up), dim H^2m(original) + sum_k dim H^2(m-k)(center))."""
    lhs = len(basis(B.result, m))
    center = B.center.as_skeleton()
    rhs = len(basis(B.original, m))
    for k in range(1, B.codim):
        rhs += len(basis(center, m - k))
    return lhs, rhs
