"""Equivariant cohomology of one-skeleta.

A class of degree m assigns a homogeneous polynomial of degree m to every
vertex such that for each edge p -> q the difference f(p) - f(q) is
divisible by the axial alpha_pq.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DecompositionFailure,
    HypothesesViolated,
    InhomogeneousInput,
    MalformedInput,
    NotAClass,
    NotComplete,
    NotDivisible,
)
from .exactalg import (
    Echelon,
    Polynomial,
    cov_sub,
    divide_by_product,
    graded_dim,
    kernel_basis,
    monomials,
    ratio,
    restrict_to_hyperplane,
    solve,
)
from .skeleton import OneSkeleton, Polarization, betti


class CohomologyClass:
    """Vertex-indexed tuple of polynomials on a fixed skeleton."""

    __slots__ = ("skeleton", "values", "degree")

    def __init__(self, skeleton: OneSkeleton, values, degree=None):
        self.skeleton = skeleton
        if isinstance(values, Mapping):
            vals = [Polynomial.zero(skeleton.n)] * skeleton.num_vertices
            for k, v in values.items():
                vals[skeleton.vertex(k)] = v
            values = vals
        self.values = tuple(values)
        if len(self.values) != skeleton.num_vertices:
            raise MalformedInput("one value per vertex is required")
        self.degree = common_degree(self.values) if degree is None else degree
        if self.degree is None:
            self.degree = 0

    def __getitem__(self, v):
        return self.values[self.skeleton.vertex(v)]

    def _check(self, other):
        if other.skeleton is not self.skeleton:
            raise ValueError("classes live on different skeleta")

    def __add__(self, other):
        self._check(other)
        return CohomologyClass(self.skeleton, [a + b for a, b in zip(self.values, other.values)],
                               self.degree)

    def __sub__(self, other):
        self._check(other)
        return CohomologyClass(self.skeleton, [a - b for a, b in zip(self.values, other.values)],
                               self.degree)

    def __neg__(self):
        return CohomologyClass(self.skeleton, [-a for a in self.values], self.degree)

    def __mul__(self, other):
        if isinstance(other, CohomologyClass):
            self._check(other)
            return CohomologyClass(self.skeleton, [a * b for a, b in zip(self.values, other.values)],
                                   self.degree + other.degree)
        if isinstance(other, Polynomial):
            d = other.homogeneous_degree() or 0
            return CohomologyClass(self.skeleton, [other * a for a in self.values],
                                   self.degree + d)
        if isinstance(other, (int, Fraction)):
            return CohomologyClass(self.skeleton, [a * other for a in self.values], self.degree)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.skeleton is other.skeleton and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def is_zero(self):
        return not any(self.values)

    def support(self) -> set:
        return {v for v, f in enumerate(self.values) if f}

    def __repr__(self):
        body = ", ".join(f"{self.skeleton.vertices[v]}: {f}" for v, f in enumerate(self.values))
        return f"CohomologyClass(deg={self.degree}; {body})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "values": {self.skeleton.vertices[v]: f.to_json() for v, f in enumerate(self.values)},
        }

    @classmethod
    def from_json(cls, skeleton: OneSkeleton, data) -> "CohomologyClass":
        try:
            degree = int(data["degree"])
            raw = data["values"]
        except (KeyError, TypeError, ValueError):
            raise MalformedInput("class file needs 'degree' and 'values'") from None
        if set(raw) != set(skeleton.vertices):
            raise MalformedInput("class values must cover exactly the skeleton's vertices")
        vals = [Polynomial.from_json(skeleton.n, raw[name]) for name in skeleton.vertices]
        return cls(skeleton, vals, degree)


def zero_class(sk: OneSkeleton, degree=0) -> CohomologyClass:
    return CohomologyClass(sk, [Polynomial.zero(sk.n)] * sk.num_vertices, degree)


def constant_class(sk: OneSkeleton, f: Polynomial) -> CohomologyClass:
    return CohomologyClass(sk, [f] * sk.num_vertices)


def common_degree(values):
    degs = set()
    for f in values:
        if f:
            d = f.homogeneous_degree()
            if d is None:
                raise InhomogeneousInput("value is not homogeneous")
            degs.add(d)
    if len(degs) > 1:
        raise InhomogeneousInput("values have different degrees", sorted(degs))
    return degs.pop() if degs else None


def class_witness(sk: OneSkeleton, values):
    """First edge where the divisibility condition fails, or None."""
    values = list(values.values) if isinstance(values, CohomologyClass) else list(values)
    common_degree(values)
    for e in sk.undirected():
        diff = values[e.src] - values[e.dst]
        if diff and restrict_to_hyperplane(diff, sk.axial[e.id]):
            return e.id
    return None


def is_class(sk: OneSkeleton, values) -> bool:
    """Edge divisibility check; raises InhomogeneousInput on mixed degrees."""
    return class_witness(sk, values) is None


def as_class(sk: OneSkeleton, values) -> CohomologyClass:
    w = class_witness(sk, values)
    if w is not None:
        raise NotAClass("edge condition fails", [w])
    return CohomologyClass(sk, values)


# -------------------------------------------------------------- linear systems

class _Restrictions:
    """Matrices of restriction to alpha = 0 on degree-m monomials."""

    def __init__(self, n, m):
        self.n, self.m = n, m
        self.monos = monomials(n, m)
        self.index = {e: i for i, e in enumerate(self.monos)}
        self._cache = {}

    def matrix(self, alpha):
        j = next(i for i, a in enumerate(alpha) if a)
        key = tuple(a / alpha[j] for a in alpha)
        if key not in self._cache:
            rows = []
            for e in self.monos:
                r = restrict_to_hyperplane(Polynomial.monomial(e), key)
                rows.append(r.terms)
            self._cache[key] = rows
        return self._cache[key]


_RESTRICTIONS = {}


def _restrictions(n, m) -> _Restrictions:
    key = (n, m)
    if key not in _RESTRICTIONS:
        _RESTRICTIONS[key] = _Restrictions(n, m)
    return _RESTRICTIONS[key]


def _compat_system(sk: OneSkeleton, m: int, unknown: Sequence[int], fixed: Mapping):
    """Rows and right-hand sides for the edge conditions.

    ``unknown`` vertices get one block of columns each; ``fixed`` maps other
    vertices to known values; all remaining vertices are zero.  Returns
    (rows, rhs, ncols) or None if a fully known edge already fails.
    """
    R = _restrictions(sk.n, m)
    L = len(R.monos)
    block = {v: k * L for k, v in enumerate(unknown)}
    rows, rhs = [], []
    for e in sk.undirected():
        a, b = e.src, e.dst
        if a not in block and b not in block:
            fa = fixed.get(a)
            fb = fixed.get(b)
            if fa is None and fb is None:
                continue
            diff = (fa or Polynomial.zero(sk.n)) - (fb or Polynomial.zero(sk.n))
            if diff and restrict_to_hyperplane(diff, sk.axial[e.id]):
                return None
            continue
        mat = R.matrix(sk.axial[e.id])
        eq = {}
        for sign, v in ((1, a), (-1, b)):
            if v in block:
                base = block[v]
                for i, row in enumerate(mat):
                    for t, c in row.items():
                        eq.setdefault(t, {})
                        col = base + i
                        val = eq[t].get(col, 0) + sign * c
                        if val:
                            eq[t][col] = val
                        else:
                            eq[t].pop(col, None)
        known = Polynomial.zero(sk.n)
        for sign, v in ((1, a), (-1, b)):
            if v in fixed:
                known = known + fixed[v] * sign
        kr = restrict_to_hyperplane(known, sk.axial[e.id]) if known else Polynomial.zero(sk.n)
        targets = set(eq) | set(kr.terms)
        for t in sorted(targets):
            rows.append(eq.get(t, {}))
            rhs.append(-kr.coefficient(t))
    return rows, rhs, L * len(unknown)


def _unpack(sk, m, unknown, vec):
    R = _restrictions(sk.n, m)
    L = len(R.monos)
    out = {}
    for k, v in enumerate(unknown):
        terms = {R.monos[i]: vec[k * L + i] for i in range(L) if vec[k * L + i]}
        out[v] = Polynomial(sk.n, terms)
    return out


def basis(sk: OneSkeleton, m: int) -> list:
    """Basis of the degree-m classes (a Q-vector space)."""
    if m < 0:
        return []
    unknown = list(range(sk.num_vertices))
    rows, _, ncols = _compat_system(sk, m, unknown, {})
    out = []
    for vec in kernel_basis(rows, ncols):
        vals = _unpack(sk, m, unknown, vec)
        out.append(CohomologyClass(sk, [vals[v] for v in unknown], m))
    return out


def dimension(sk: OneSkeleton, m: int) -> int:
    return len(basis(sk, m))


def dimension_formula(sk: OneSkeleton, m: int, xi) -> int:
    """sum_k b_2k * dim S^{m-k}(g*)."""
    b = betti(sk, xi)
    return sum(bk * graded_dim(m - k, sk.n) for k, bk in enumerate(b))


def coordinates(classes: Sequence[CohomologyClass], m: int) -> list:
    """Flatten classes to coefficient vectors (vertex-major, monomial order)."""
    if not classes:
        return []
    sk = classes[0].skeleton
    R = _restrictions(sk.n, m)
    rows = []
    for c in classes:
        row = []
        for f in c.values:
            row += [f.coefficient(e) for e in R.monos]
        rows.append(row)
    return rows


# ------------------------------------------------------- complete skeleta

def _elementary(polys, r, n):
    """Elementary symmetric polynomial e_r of a list of polynomials."""
    e = [Polynomial.one(n)] + [Polynomial.zero(n)] * r
    for p in polys:
        for k in range(r, 0, -1):
            e[k] = e[k] + e[k - 1] * p
    return e[r]


def power_coefficients(taus: Sequence, values: Sequence[Polynomial], m: int) -> tuple:
    """Solve values[i] = sum_k c_k * tau_i^k for polynomials c_0..c_{N-1}.

    This is Lagrange interpolation in the tau direction: clear the
    Vandermonde denominator, then divide it out factor by factor.
    """
    N = len(taus)
    n = values[0].n if values else len(taus[0])
    T = [Polynomial.linear(t) for t in taus]
    pairs = [(a, b) for a in range(N) for b in range(a + 1, N)]
    coeffs = []
    for k in range(N):
        r = N - 1 - k
        num = Polynomial.zero(n)
        for i in range(N):
            if not values[i]:
                continue
            others = [T[j] for j in range(N) if j != i]
            term = values[i] * _elementary(others, r, n)
            for a, b in pairs:
                if a != i and b != i:
                    term = term * (T[a] - T[b])
            sign = (-1) ** (r + i)
            num = num + term * sign
        try:
            c = divide_by_product(num, [cov_sub(taus[a], taus[b]) for a, b in pairs])
        except NotDivisible:
            raise NotAClass("values are not a class on the complete skeleton") from None
        if c and c.homogeneous_degree() != m - k:
            raise NotAClass("coefficient has the wrong degree", [k])
        coeffs.append(c)
    for i in range(N):
        total = Polynomial.zero(n)
        for k, c in enumerate(coeffs):
            if c:
                total = total + c * T[i] ** k
        if total != values[i]:
            raise NotAClass("reassembly failed", [i])
    return tuple(coeffs)


def is_complete(sk: OneSkeleton) -> bool:
    N = sk.num_vertices
    if sk.valence != N - 1:
        return False
    return all(sorted(sk.neighbors(v)) == [w for w in range(N) if w != v] for v in range(N))


def complete_decompose(f: CohomologyClass, taus=None) -> tuple:
    """Write f = f_m + f_{m-1} tau + ... + f_{m-N+1} tau^{N-1}.

    Returns (f_m, ..., f_{m-N+1}) with entries in S(g*).  ``taus`` defaults
    to the skeleton's generating class.
    """
    sk = f.skeleton
    if not is_complete(sk):
        raise NotComplete("skeleton is not complete")
    if taus is None:
        taus = sk.generating_class
    if taus is None:
        raise NotComplete("skeleton carries no generating class")
    w = class_witness(sk, f.values)
    if w is not None:
        raise NotAClass("edge condition fails", [w])
    return power_coefficients(taus, f.values, f.degree)


def tau_power_class(sk: OneSkeleton, k: int, taus=None) -> CohomologyClass:
    taus = taus or sk.generating_class
    return CohomologyClass(sk, [Polynomial.linear(t) ** k for t in taus], k)


def complete_recompose(sk: OneSkeleton, parts: Sequence[Polynomial], m: int, taus=None):
    taus = taus or sk.generating_class
    vals = []
    for t in taus:
        T = Polynomial.linear(t)
        total = Polynomial.zero(sk.n)
        for k, c in enumerate(parts):
            if c:
                total = total + c * T ** k
        vals.append(total)
    return CohomologyClass(sk, vals, m)


# ---------------------------------------------------------- Thom classes

def flow_out(pol: Polarization, p) -> set:
    """Vertices reachable from p along upward edges (p included)."""
    sk = pol.skeleton
    p = sk.vertex(p)
    seen, stack = {p}, [p]
    while stack:
        v = stack.pop()
        for e in pol.up_edges(v):
            w = sk.edges[e].dst
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def down_product(pol: Polarization, p) -> Polynomial:
    sk = pol.skeleton
    out = Polynomial.one(sk.n)
    for e in pol.down_edges(p):
        out = out * Polynomial.linear(sk.axial[e])
    return out


class ThomBasis:
    """Thom classes tau_p, built lazily from the top of phi downward."""

    def __init__(self, pol: Polarization, seed=None):
        self.pol = pol
        self.seed = seed
        self._classes = {}

    def __getitem__(self, p) -> CohomologyClass:
        p = self.pol.skeleton.vertex(p)
        if p not in self._classes:
            # make sure everything above exists first (iterative, no deep recursion)
            for q in sorted(range(len(self.pol.phi)), key=lambda v: -self.pol.phi[v]):
                if self.pol.phi[q] <= self.pol.phi[p]:
                    break
                if q not in self._classes:
                    self._classes[q] = _thom(self.pol, q, self, self.seed)
            self._classes[p] = _thom(self.pol, p, self, self.seed)
        return self._classes[p]

    def all(self) -> dict:
        return {p: self[p] for p in sorted(range(len(self.pol.phi)), key=lambda v: -self.pol.phi[v])}


def _thom(pol: Polarization, p: int, known: ThomBasis, seed) -> CohomologyClass:
    sk = pol.skeleton
    s = pol.index[p]
    top = down_product(pol, p)
    unknown = [q for q in range(sk.num_vertices) if pol.phi[q] > pol.phi[p]]
    system = _compat_system(sk, s, unknown, {p: top})
    if system is None:
        raise HypothesesViolated("no class with the prescribed value at p", [sk.vertices[p]])
    rows, rhs, ncols = system
    rng = random.Random(seed) if seed is not None else None
    sol = solve(rows, rhs, ncols, rng=rng) if rows else (Fraction(0),) * ncols
    if sol is None:
        raise HypothesesViolated("no class with the prescribed value at p", [sk.vertices[p]])
    vals = _unpack(sk, s, unknown, sol)
    values = [Polynomial.zero(sk.n)] * sk.num_vertices
    values[p] = top
    for q, f in vals.items():
        values[q] = f
    tau = CohomologyClass(sk, values, s)
    flow = flow_out(pol, p)
    for q in sorted(unknown, key=lambda v: pol.phi[v]):
        if q in flow or not tau.values[q]:
            continue
        try:
            g = divide_by_product(tau.values[q], [sk.axial[e] for e in pol.down_edges(q)])
        except NotDivisible:
            raise HypothesesViolated("cannot clear value outside the flow-out",
                                     [sk.vertices[p], sk.vertices[q]]) from None
        tau = tau - known[q] * g
    if not tau.support() <= flow or class_witness(sk, tau.values) is not None:
        raise HypothesesViolated("Thom class construction failed", [sk.vertices[p]])
    return tau


def thom_class(pol: Polarization, p, seed=None) -> CohomologyClass:
    """The class supported on the flow-out of p with value prod(down alpha) at p."""
    return ThomBasis(pol, seed)[p]


def thom_basis(pol: Polarization, seed=None) -> ThomBasis:
    return ThomBasis(pol, seed)


def decompose(f: CohomologyClass, pol: Polarization, thom: ThomBasis | None = None) -> dict:
    """Coefficients h_p with f = sum_p h_p tau_p, swept by increasing phi."""
    sk = f.skeleton
    thom = thom or ThomBasis(pol)
    residue = f
    out = {}
    for p in pol.order():
        val = residue.values[p]
        if not val:
            out[p] = Polynomial.zero(sk.n)
            continue
        try:
            h = divide_by_product(val, [sk.axial[e] for e in pol.down_edges(p)])
        except NotDivisible:
            raise DecompositionFailure("residue not divisible by the down product",
                                       [sk.vertices[p]]) from None
        out[p] = h
        residue = residue - thom[p] * h
    if not residue.is_zero():
        raise DecompositionFailure("nonzero residue after sweep",
                                   sorted(sk.vertices[v] for v in residue.support()))
    return out


def recombine(coeffs: Mapping, thom: ThomBasis, degree: int) -> CohomologyClass:
    sk = thom.pol.skeleton
    total = zero_class(sk, degree)
    for p, h in coeffs.items():
        if h:
            total = total + thom[p] * h
    return CohomologyClass(sk, total.values, degree)


# ------------------------------------------------------------ deformations

@dataclass
class Deformation:
    """A degree-one class read as a direction f(p) in g* for each vertex."""

    skeleton: OneSkeleton
    coords: tuple       # Phi(p) per vertex
    direction: tuple    # f(p) per vertex, covectors
    multipliers: dict   # undirected edge id -> mu_e, f(q) - f(p) = mu_e alpha_pq

    @property
    def is_translation(self):
        return len(set(self.direction)) == 1

    def safe_t(self) -> Fraction:
        """Largest t0 <= 1 with 1 + t mu_e > 0 for every edge and 0 <= t < t0."""
        t0 = Fraction(1)
        for mu in self.multipliers.values():
            if mu < 0:
                t0 = min(t0, -1 / mu)
        return t0

    def emit(self, t) -> list:
        t = Fraction(t)
        return [tuple(x + t * y for x, y in zip(c, d)) for c, d in zip(self.coords, self.direction)]


def deformation_space(P) -> list:
    """Degree-one classes of a polytope skeleton as vertex deformations.

    The basis starts with the n translations and the homothety f(p) = Phi(p);
    the remaining elements complete it to a basis of the degree-one classes.
    """
    from .builders import polytope_skeleton

    sk = polytope_skeleton(P)
    coords = tuple(tuple(Fraction(x) for x in c) for c in P.coords)
    zero = (Fraction(0),) * sk.n
    candidates = []
    for i in range(sk.n):
        e = tuple(Fraction(int(j == i)) for j in range(sk.n))
        candidates.append((e,) * sk.num_vertices)
    candidates.append(coords)
    for f in basis(sk, 1):
        candidates.append(tuple(v.to_covector() if v else zero for v in f.values))
    ech = Echelon()
    out = []
    for direction in candidates:
        if not ech.add([x for c in direction for x in c]):
            continue
        mult = {}
        for e in sk.undirected():
            diff = cov_sub(direction[e.dst], direction[e.src])
            mu = ratio(diff, sk.axial[e.id])
            if mu is None:
                raise NotAClass("degree-one class is not edge-parallel", [e.id])
            mult[e.id] = mu
        out.append(Deformation(sk, coords, direction, mult))
    return out
