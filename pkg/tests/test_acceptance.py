"""Acceptance criteria.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.  All comparisons are exact: rationals are
Fractions, polynomials are compared term by term, and the tolerance below is
pinned at zero.
"""
import random
from fractions import Fraction

import pytest
import sympy as sp

import oracles as O
from conftest import random_combination, random_poly
from gkm.builders import (
    complete,
    cube,
    cube_polytope,
    edge_graph,
    football,
    johnson,
    octahedron,
    octahedron_polytope,
    polytope_skeleton,
    Polytope,
    product,
    ramified_cover,
    s6,
)
from gkm.cohomology import (
    basis,
    complete_decompose,
    complete_recompose,
    decompose,
    deformation_space,
    flow_out,
    is_class,
    recombine,
    thom_basis,
)
from gkm.exactalg import Polynomial, cov_sub, pairing, ratio
from gkm.reduction import (
    crossing_dims_check,
    flip_flop,
    kirwan_report,
    pivot_index,
    reduce,
    regular_levels,
    to_y,
)
from gkm.schubert import (
    divided_difference,
    schubert_class,
    self_indexing_offset,
    standard_polarization,
    top_class,
)
from gkm.skeleton import (
    betti,
    check_noncyclic,
    find_isomorphism,
    independence_level,
    is_gkm,
    polarize,
    sample_polarizing,
    validate,
)
from gkm.surgery import blow_up, blowup_cohomology_decompose, blowup_dimension_identity

TOLERANCE = Fraction(0)
SEEDS = range(25)


def exact(a, b):
    """Equality with the pinned zero tolerance."""
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return abs(Fraction(a) - Fraction(b)) <= TOLERANCE
    return a == b


def fixtures_for_betti():
    return {
        "octahedron": octahedron(),
        "cube": cube(),
        "J(4,2)": johnson(4, 2),
        "J(5,2)": johnson(5, 2),
        "Gamma_8": ramified_cover(2),
        "S6": s6(),
    }


# ---------------------------------------------------------------- 1

@pytest.mark.criterion(1, "Betti numbers are independent of the polarization")
def test_c01_betti_invariance():
    for name, sk in fixtures_for_betti().items():
        seen = set()
        for seed in SEEDS:
            xi = sample_polarizing(sk, seed)
            b = betti(sk, xi)
            assert b == O.index_counts(sk, xi), name
            seen.add(b)
        assert len(seen) == 1, (name, seen)


# ---------------------------------------------------------------- 2

@pytest.mark.criterion(2, "known Betti values and Poincare duality")
def test_c02_betti_values():
    assert betti(s6(), sample_polarizing(s6(), 0)) == (0, 1, 1, 0)
    assert betti(ramified_cover(2), sample_polarizing(ramified_cover(2), 0)) == (2, 4, 2)
    assert betti(octahedron(), sample_polarizing(octahedron(), 0))[1] == 1
    for name, sk in fixtures_for_betti().items():
        b = betti(sk, sample_polarizing(sk, 3))
        assert b == tuple(reversed(b)), name


# ---------------------------------------------------------------- 3

COMPLETE_TAUS = {
    2: [(0, 0), (1, 0), (0, 1), (1, 3)],
    3: [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 5)],
}


@pytest.mark.criterion(3, "complete skeleta: dimensions and power decomposition")
def test_c03_complete():
    rng = random.Random(3)
    for n, taus in COMPLETE_TAUS.items():
        for N in (2, 3, 4):
            sk = complete(taus[:N])
            for m in range(5):
                expected = sum(O.lam(m - k, n) for k in range(N))
                assert len(basis(sk, m)) == expected, (n, N, m)
            for _ in range(30):
                m = rng.randint(0, 4)
                parts = [random_poly(rng, n, m - k) for k in range(N)]
                f = complete_recompose(sk, parts, m)
                assert is_class(sk, f.values)
                got = complete_decompose(f)
                assert list(got) == parts
                assert complete_recompose(sk, got, m) == f


# ---------------------------------------------------------------- 4

DIMENSION_CASES = {
    "octahedron": (octahedron, 4),
    "cube": (cube, 3),
    "J(4,2)": (lambda: johnson(4, 2), 4),
    "L+xL+": (lambda: product(edge_graph(1), edge_graph(1)), 2),
}


@pytest.mark.criterion(4, "dimension of H^2m equals sum of b_2k lambda_{m-k}")
def test_c04_dimension_theorem():
    for name, (build, d) in DIMENSION_CASES.items():
        sk = build()
        b = betti(sk, sample_polarizing(sk, 0))
        for m in range(d + 1):
            formula = sum(b[k] * O.lam(m - k, sk.n) for k in range(len(b)))
            got = len(basis(sk, m))
            assert got == formula, (name, m)
            assert got == O.cohomology_dimension(sk, m), (name, m)
    assert len(basis(octahedron(), 1)) == 4


# ---------------------------------------------------------------- 5

def _thom_cases():
    return [(octahedron(), (1, 2, 4)), (johnson(4, 2), (1, 2, 3, 4))]


@pytest.mark.criterion(5, "Thom classes: support, value, and module decomposition")
def test_c05_thom():
    rng = random.Random(5)
    for sk, xi in _thom_cases():
        pol = polarize(sk, xi)
        tb = thom_basis(pol)
        xs = O.symbols(sk.n)
        for p in range(sk.num_vertices):
            tau = tb[p]
            assert O.is_class(sk, tau.values)
            assert tau.support() <= flow_out(pol, p)
            assert p in tau.support()
            down = [e for e in sk.out[p] if pairing(sk.axial[e], xi) < 0]
            assert len(down) == pol.index[p]
            expected = sp.expand(sp.Mul(*[O.linear_form(sk.axial[e], xs) for e in down]))
            assert O.to_sympy(tau.values[p], xs) == expected
            assert tau.degree == pol.index[p]
        for m in range(4):
            for _ in range(30):
                coeffs = {p: random_poly(rng, sk.n, m - pol.index[p])
                          for p in range(sk.num_vertices)}
                f = recombine(coeffs, tb, m)
                got = decompose(f, pol, tb)
                for p in range(sk.num_vertices):
                    assert got.get(p, Polynomial.zero(sk.n)) == coeffs[p]
                assert recombine(got, tb, m) == f


# ---------------------------------------------------------------- 6

@pytest.mark.criterion(6, "blow-up of the octahedron at a vertex")
def test_c06_blowup():
    sk = octahedron()
    B = blow_up(sk, ["+x"])
    assert validate(B.result).ok
    for m in range(4):
        lhs, rhs = blowup_dimension_identity(B, m)
        formula = len(basis(sk, m)) + sum(O.lam(m - k, 3) for k in range(1, 4))
        assert lhs == rhs == formula, m
        assert O.cohomology_dimension(B.result, m) == lhs
    rng = random.Random(6)
    bases = {m: basis(B.result, m) for m in range(4)}
    for _ in range(20):
        m = rng.randint(0, 3)
        f = random_combination(rng, bases[m])
        dec = blowup_cohomology_decompose(f, B)
        assert dec.recompose(B) == f


# ---------------------------------------------------------------- 7

def _complete_model(R):
    """Complete skeleton on the reduced vertices generated by the normalized
    axials at the minimum, written in the same y-coordinates."""
    sk, pol = R.source, R.pol
    j = pivot_index(pol.xi)
    taus = []
    for v in range(R.skeleton.num_vertices):
        a = sk.axial[sk.edges[R.crossing[v]].rev]
        s = pairing(a, pol.xi)
        taus.append(to_y(tuple(x / s for x in a), j))
    return complete(taus)


@pytest.mark.criterion(7, "reduction above the minimum is complete; crossing dimensions")
def test_c07_reduction():
    sk = octahedron()
    pol = polarize(sk, (1, 2, 4))
    R = reduce(sk, pol, regular_levels(pol)[0])
    G = R.skeleton
    assert G.num_vertices == 4 and G.valence == 3
    model = _complete_model(R)
    mapping = find_isomorphism(G, model, up_to_scaling=True)
    assert mapping is not None
    # each reduced axial is a positive multiple of tau_j - tau_i, and the
    # connection is the complete one under the same vertex map
    for e in G.edges:
        target = [f for f in model.out[mapping[e.src]] if model.edges[f].dst == mapping[e.dst]]
        (f,) = target
        t = ratio(G.axial[e.id], model.axial[f])
        assert t is not None and t > 0
        for a, b in G.theta[e.id].items():
            ma = [g for g in model.out[mapping[e.src]]
                  if model.edges[g].dst == mapping[G.edges[a].dst]][0]
            mb = model.theta[f][ma]
            assert model.edges[mb].dst == mapping[G.edges[b].dst]
    for p in range(sk.num_vertices):
        for m in range(3):
            lhs, rhs = crossing_dims_check(sk, pol, p, m)
            assert lhs == rhs, (sk.vertices[p], m)


# ---------------------------------------------------------------- 8

@pytest.mark.criterion(8, "flip-flop blow-ups are isomorphic")
def test_c08_flip_flop():
    cases = [(octahedron(), (1, 2, 4), 1), (johnson(4, 2), (1, 2, 4, 8), 2)]
    for sk, xi, r in cases:
        pol = polarize(sk, xi)
        verts = [p for p in range(sk.num_vertices) if pol.index[p] == r]
        assert verts
        for p in verts:
            F = flip_flop(sk, pol, p)
            assert F.isomorphic, sk.vertices[p]
            A, Bres = F.blowup_below.result, F.blowup_above.result
            mp = F.mapping
            assert sorted(mp.values()) == list(range(Bres.num_vertices))
            for e in A.edges:
                (f,) = [g for g in Bres.out[mp[e.src]] if Bres.edges[g].dst == mp[e.dst]]
                assert all(exact(x, y) for x, y in zip(A.axial[e.id], Bres.axial[f]))
                # a multiplicity pair is only defined up to a common factor
                assert A.mult[e.id] * Bres.mult[Bres.edges[f].rev] == \
                    Bres.mult[f] * A.mult[e.rev]


# ---------------------------------------------------------------- 9

@pytest.mark.criterion(9, "Kirwan map: surjective, kernel dimension, kernel splitting")
def test_c09_kirwan():
    for sk, xi in [(octahedron(), (1, 2, 4)), (johnson(4, 2), (1, 2, 4, 8))]:
        pol = polarize(sk, xi)
        for c in regular_levels(pol):
            R = reduce(sk, pol, c)
            for m in range(3):
                rep = kirwan_report(R, m)
                assert rep.rank == rep.target_dim, (c, m)
                assert rep.kernel_dim == rep.kernel_formula, (c, m)
                assert rep.rank + rep.kernel_dim == rep.source_dim
                assert rep.split_ok


# ---------------------------------------------------------------- 10

@pytest.mark.criterion(10, "Schubert classes on J(4,2)")
def test_c10_schubert():
    sk = johnson(4, 2)
    pol = standard_polarization(sk)
    tb = thom_basis(pol)
    for p in range(sk.num_vertices):
        assert schubert_class(sk, p) == tb[p]
    rng = random.Random(10)
    classes = {m: basis(sk, m) for m in range(1, 4)}
    for _ in range(10):
        m = rng.randint(1, 3)
        f = random_combination(rng, classes[m])
        i = rng.randint(1, 3)
        assert divided_difference(i, divided_difference(i, f)).is_zero()
    xs = O.symbols(4)
    delta = sp.expand(sp.Mul(*[xs[i] - xs[j] for i in range(2) for j in range(2, 4)]))
    top = top_class(sk)
    (v,) = top.support()
    assert O.to_sympy(top.values[v], xs) == delta
    assert self_indexing_offset(sk) == {3}


# ---------------------------------------------------------------- 11

def _edge_parallel_positive(P, Q):
    for a, b in P.edges:
        d0 = cov_sub(tuple(map(Fraction, P.coords[b])), tuple(map(Fraction, P.coords[a])))
        d1 = cov_sub(tuple(Q.coords[b]), tuple(Q.coords[a]))
        t = ratio(d1, d0)
        if t is None or t <= 0:
            return False
    return True


@pytest.mark.criterion(11, "polytope deformations")
def test_c11_deformations():
    for P, dim in [(octahedron_polytope(), 4), (cube_polytope(), 6)]:
        space = deformation_space(P)
        assert len(space) == dim
        translations = [d for d in space if d.is_translation]
        assert len(translations) == 3
        homothety = space[3]
        assert list(homothety.direction) == [tuple(map(Fraction, c)) for c in P.coords]
        for d in space:
            t0 = d.safe_t()
            assert t0 > 0
            for t in (Fraction(0), t0 / 3, t0 / 2, t0 * Fraction(99, 100)):
                Q = Polytope(P.n, d.emit(t), P.edges, P.names)
                assert _edge_parallel_positive(P, Q), (t, d.multipliers)
                polytope_skeleton(Q)


# ---------------------------------------------------------------- 12

@pytest.mark.criterion(12, "validators on S6, Gamma_8 and the football")
def test_c12_validators():
    g = s6()
    rep = validate(g)
    assert rep.a1.ok and rep.a2.ok and rep.a3.ok
    assert independence_level(g) < 3
    assert not check_noncyclic(g, (1, 2)).nca1

    r = ramified_cover(2)
    nc = check_noncyclic(r, (1, 2))
    assert nc.nca1 and not nc.nca2
    w = nc.plane_witness
    assert w["b0"] >= 2
    plane = [tuple(Fraction(x) for x in v) for v in w["plane"]]
    assert sp.Matrix(plane).rank() == 2
    assert len(w["component"]) == r.num_vertices

    f = football(1, 2)
    assert f.mult[0] == 2
    assert validate(f).a2.ok
    for e in f.edges:
        assert tuple(f.mult[e.rev] * a for a in f.axial[e.rev]) == \
            tuple(-f.mult[e.id] * a for a in f.axial[e.id])
    assert not is_gkm(f)
