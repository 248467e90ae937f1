"""Independent reference computations built on sympy.

These avoid the package's own linear algebra and polynomial code so that
agreement is a genuine cross-check.
"""
import itertools
from math import comb

import sympy as sp


def lam(k, n):
    return comb(k + n - 1, n - 1) if k >= 0 else 0


def symbols(n):
    return sp.symbols(f"x0:{n}")


def linear_form(alpha, xs):
    return sum(sp.Rational(str(a)) * x for a, x in zip(alpha, xs))


def to_sympy(poly, xs):
    """Convert a package Polynomial through its public term listing."""
    expr = sp.Integer(0)
    for exps, c in poly.items():
        term = sp.Rational(c.numerator, c.denominator)
        for x, k in zip(xs, exps):
            term *= x ** k
        expr += term
    return sp.expand(expr)


def on_hyperplane(expr, alpha, xs):
    """Restrict expr to alpha = 0 by eliminating the last variable alpha touches."""
    j = max(i for i, a in enumerate(alpha) if a != 0)
    a = [sp.Rational(str(t)) for t in alpha]
    sub = -sum(a[i] * xs[i] for i in range(len(xs)) if i != j) / a[j]
    return sp.expand(expr.subs(xs[j], sub))


def divides(alpha, expr, xs):
    return on_hyperplane(expr, alpha, xs) == 0


def monomials(xs, m):
    return [sp.Mul(*c) for c in itertools.combinations_with_replacement(xs, m)] if m else [sp.Integer(1)]


def cohomology_dimension(sk, m):
    """dim of degree-m classes: unknown coefficients per vertex, one block of
    linear equations per edge from restricting f(p) - f(q) to alpha = 0."""
    if m < 0:
        return 0
    n = sk.n
    xs = symbols(n)
    mons = monomials(xs, m)
    nv = sk.num_vertices
    coeffs = sp.symbols(f"c0:{nv * len(mons)}")
    f = [sum(coeffs[v * len(mons) + i] * mon for i, mon in enumerate(mons)) for v in range(nv)]
    rows = []
    seen = set()
    for e in sk.edges:
        key = frozenset((e.id, e.rev))
        if key in seen:
            continue
        seen.add(key)
        diff = on_hyperplane(f[e.src] - f[e.dst], sk.axial[e.id], xs)
        if diff == 0:
            continue
        for c in sp.Poly(diff, *xs).coeffs():
            rows.append([c.coeff(s) for s in coeffs])
    if not rows:
        return len(coeffs)
    return len(coeffs) - sp.Matrix(rows).rank()


def is_class(sk, values):
    xs = symbols(sk.n)
    vals = [to_sympy(v, xs) for v in values]
    return all(divides(sk.axial[e.id], vals[e.src] - vals[e.dst], xs) for e in sk.edges)


def index_counts(sk, xi):
    """Betti numbers straight from the signs of the axials."""
    d = sk.valence
    counts = [0] * (d + 1)
    for v in range(sk.num_vertices):
        neg = sum(1 for e in sk.out[v] if sum(a * x for a, x in zip(sk.axial[e], xi)) < 0)
        counts[neg] += 1
    return tuple(counts)


def flow_out(sk, xi, p):
    seen = {p}
    stack = [p]
    while stack:
        v = stack.pop()
        for e in sk.out[v]:
            if sum(a * x for a, x in zip(sk.axial[e], xi)) > 0:
                w = sk.edges[e].dst
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return seen


def thom_solutions(sk, xi, p):
    """Solve for a class supported on the flow-out of p whose value at p is
    the product of the downward axials.  Returns (values, free_count)."""
    xs = symbols(sk.n)
    down = [e for e in sk.out[p] if sum(a * x for a, x in zip(sk.axial[e], xi)) < 0]
    k = len(down)
    top = sp.expand(sp.Mul(*[linear_form(sk.axial[e], xs) for e in down]))
    support = sorted(flow_out(sk, xi, p) - {p})
    mons = monomials(xs, k)
    unknowns = sp.symbols(f"u0:{len(support) * len(mons)}")
    vals = {v: sp.Integer(0) for v in range(sk.num_vertices)}
    vals[p] = top
    for i, v in enumerate(support):
        vals[v] = sum(unknowns[i * len(mons) + j] * mon for j, mon in enumerate(mons))
    eqs = []
    for e in sk.edges:
        diff = on_hyperplane(vals[e.src] - vals[e.dst], sk.axial[e.id], xs)
        if diff != 0:
            eqs.extend(sp.Poly(diff, *xs).coeffs())
    if not unknowns:
        return ({v: vals[v] for v in vals} if not eqs else None), 0
    sol = sp.linsolve(eqs, unknowns)
    if not sol:
        return None, 0
    (tup,) = sol
    free = set().union(*[t.free_symbols for t in tup]) & set(unknowns)
    subs = dict(zip(unknowns, tup))
    return {v: sp.expand(vals[v].subs(subs)) for v in vals}, len(free)
