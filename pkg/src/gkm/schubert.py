"""Divided differences and Schubert classes on Johnson skeleta."""
from __future__ import annotations


from .builders import johnson, johnson_subsets
from .cohomology import CohomologyClass, flow_out, thom_basis
from .errors import BadParameters
from .exactalg import Polynomial, divide_by_linear
from .skeleton import OneSkeleton, polarize


def _swap(S, i):
    out = set()
    for a in S:
        out.add(i + 1 if a == i else i if a == i + 1 else a)
    return frozenset(out)


def _perm(n, i):
    perm = list(range(n))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return perm


def _simple_root(n, i):
    a = [0] * n
    a[i - 1], a[i] = 1, -1
    return a


def weyl_action(i: int, f: CohomologyClass) -> CohomologyClass:
    """(s_i f)(p) = s_i(f(s_i p)) for the simple transposition s_i = (i, i+1)."""
    sk = f.skeleton
    subsets = johnson_subsets(sk)
    index = {S: v for v, S in enumerate(subsets)}
    perm = _perm(sk.n, i)
    vals = [f.values[index[_swap(S, i)]].permute_variables(perm) for S in subsets]
    return CohomologyClass(sk, vals, f.degree)


def divided_difference(i: int, f: CohomologyClass) -> CohomologyClass:
    """(D_i f)(p) = (f(p) - s_i f(s_i p)) / (x_i - x_{i+1})."""
    sk = f.skeleton
    if not 1 <= i < sk.n:
        raise BadParameters(f"no simple transposition s_{i} for n={sk.n}")
    g = weyl_action(i, f)
    root = _simple_root(sk.n, i)
    vals = [divide_by_linear(a - b, root) for a, b in zip(f.values, g.values)]
    return CohomologyClass(sk, vals, max(f.degree - 1, 0))


def bruhat_path(S, n: int) -> list:
    """Greedy upward path to the top subset: repeatedly apply s_i for the
    smallest i with i in S and i+1 not in S."""
    S = frozenset(S)
    path = []
    while True:
        step = next((i for i in range(1, n) if i in S and i + 1 not in S), None)
        if step is None:
            return path
        path.append(step)
        S = _swap(S, step)


def top_subset(n: int, k: int) -> frozenset:
    return frozenset(range(n - k + 1, n + 1))


def standard_polarization(sk: OneSkeleton):
    return polarize(sk, tuple(range(1, sk.n + 1)))


def top_class(sk: OneSkeleton) -> CohomologyClass:
    """Class supported at the top vertex with value the product of its axials."""
    subsets = johnson_subsets(sk)
    k = len(subsets[0])
    top = subsets.index(top_subset(sk.n, k))
    value = Polynomial.one(sk.n)
    for e in sk.out[top]:
        value = value * Polynomial.linear(sk.axial[e])
    vals = [Polynomial.zero(sk.n)] * sk.num_vertices
    vals[top] = value
    return CohomologyClass(sk, vals, len(sk.out[top]))


def schubert_class(sk: OneSkeleton, p, path=None) -> CohomologyClass:
    """Apply divided differences along an upward path from p to the top class.

    For the path p = p_0 -> s_{i_1} p_0 -> ... -> top this returns
    D_{i_1} ... D_{i_s} applied to the top class.
    """
    subsets = johnson_subsets(sk)
    S = subsets[sk.vertex(p)]
    if path is None:
        path = bruhat_path(S, sk.n)
    f = top_class(sk)
    for i in reversed(path):
        f = divided_difference(i, f)
    return f


def random_path(S, n, rng) -> list:
    """A uniformly chosen upward path of simple transpositions to the top."""
    S = frozenset(S)
    path = []
    while True:
        steps = [i for i in range(1, n) if i in S and i + 1 not in S]
        if not steps:
            return path
        i = rng.choice(steps)
        path.append(i)
        S = _swap(S, i)


def double_schubert_table(n: int, k: int) -> dict:
    """f_{p,q} = tau_p(q) for q in the flow-out of p, keyed by "S={...}"."""
    sk = johnson(n, k)
    pol = standard_polarization(sk)
    tb = thom_basis(pol)
    table = {}
    for p in range(sk.num_vertices):
        tau = tb[p]
        row = {}
        for q in sorted(flow_out(pol, p)):
            row["S=" + sk.vertices[q]] = tau.values[q]
        table["S=" + sk.vertices[p]] = row
    return table


def format_table(table: dict) -> str:
    lines = []
    for p in sorted(table):
        for q in sorted(table[p]):
            lines.append(f"{p}\t{q}\t{table[p][q]}")
    return "\n".join(lines)


def self_indexing_offset(sk: OneSkeleton) -> set:
    """Set of values sum(S) - index(S); a single value k(k+1)/2 when self-indexing."""
    pol = standard_polarization(sk)
    subsets = johnson_subsets(sk)
    return {sum(S) - pol.index[v] for v, S in enumerate(subsets)}
