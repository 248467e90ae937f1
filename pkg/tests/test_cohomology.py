import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracles as O
from conftest import random_combination, random_poly
from gkm.builders import complete, cube, johnson, octahedron, ramified_cover
from gkm.cohomology import (
    as_class,
    basis,
    common_degree,
    complete_decompose,
    constant_class,
    coordinates,
    decompose,
    dimension,
    dimension_formula,
    is_class,
    power_coefficients,
    tau_power_class,
    thom_basis,
    thom_class,
    zero_class,
)
from gkm.errors import (
    HypothesesViolated,
    InhomogeneousInput,
    NotAClass,
    NotComplete,
)
from gkm.exactalg import Polynomial
from gkm.skeleton import polarize

OCT = octahedron()
OCT_BASES = {m: basis(OCT, m) for m in range(4)}

# Thom classes of J(4,2) for xi = (1,2,3,4), frozen from the sympy solver in
# oracles.thom_solutions (unique solutions there).  Variables are x0..x3.
J42_THOM = {
    "{1,3}": {"{1,3}": "x1 - x2", "{1,4}": "x1 - x3", "{2,3}": "x0 - x2",
              "{2,4}": "x0 - x3", "{3,4}": "x0 + x1 - x2 - x3"},
    "{1,4}": {"{1,4}": "(x1 - x3)*(x2 - x3)", "{2,4}": "(x0 - x3)*(x2 - x3)",
              "{3,4}": "(x0 - x3)*(x1 - x3)"},
    "{2,3}": {"{2,3}": "(x0 - x1)*(x0 - x2)", "{2,4}": "(x0 - x1)*(x0 - x3)",
              "{3,4}": "(x0 - x2)*(x0 - x3)"},
}


def test_dimensions_against_oracle():
    for sk, top in [(OCT, 3), (cube(), 2), (johnson(4, 2), 2)]:
        for m in range(top + 1):
            assert dimension(sk, m) == O.cohomology_dimension(sk, m)


def test_dimension_formula():
    pol_xi = (1, 2, 4)
    assert [dimension_formula(OCT, m, pol_xi) for m in range(5)] == [1, 4, 11, 23, 41]


def test_basis_elements_are_classes_and_independent():
    for m, cls in OCT_BASES.items():
        for f in cls:
            assert O.is_class(OCT, f.values)
            assert f.degree == m
        coords = coordinates(cls, m)
        assert sp.Matrix(coords).rank() == len(cls)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 10 ** 6))
def test_products_and_sums_are_classes(m1, m2, seed):
    rng = random.Random(seed)
    f = random_combination(rng, OCT_BASES[m1])
    g = random_combination(rng, OCT_BASES[m2])
    assert is_class(OCT, (f * g).values)
    assert (f * g).degree == m1 + m2
    h = random_combination(rng, OCT_BASES[m1])
    assert is_class(OCT, (f + h).values)
    c = random_poly(rng, 3, 1)
    assert is_class(OCT, (f * c).values)


def test_constant_and_zero():
    x = Polynomial.variable(3, 0)
    c = constant_class(OCT, x)
    assert is_class(OCT, c.values) and c.degree == 1
    assert zero_class(OCT, 2).is_zero()
    assert c.support() == set(range(6))


def test_class_errors():
    x = Polynomial.variable(3, 0)
    y = Polynomial.variable(3, 1)
    with pytest.raises(InhomogeneousInput):
        common_degree([x, x * y])
    vals = [x] + [Polynomial.zero(3)] * 5
    with pytest.raises(NotAClass) as exc:
        as_class(OCT, vals)
    assert exc.value.witness


def test_complete_power_coefficients():
    taus = [(0, 0), (1, 0), (0, 1)]
    sk = complete(taus)
    rng = random.Random(1)
    for _ in range(10):
        m = rng.randint(0, 3)
        parts = [random_poly(rng, 2, m - k) for k in range(3)]
        f = sum((tau_power_class(sk, k) * parts[k] for k in range(3) if parts[k]),
                zero_class(sk, m))
        assert list(complete_decompose(f)) == parts
    with pytest.raises(NotAClass):
        power_coefficients(taus, [Polynomial.variable(2, 0), Polynomial.zero(2),
                                  Polynomial.zero(2)], 1)
    with pytest.raises(NotComplete):
        complete_decompose(OCT_BASES[1][0])


def test_j42_thom_frozen():
    sk = johnson(4, 2)
    xi = (1, 2, 3, 4)
    pol = polarize(sk, xi)
    xs = O.symbols(4)
    for p, table in J42_THOM.items():
        tau = thom_class(pol, p)
        oracle, free = O.thom_solutions(sk, xi, sk.vertex(p))
        assert free == 0
        for v in range(sk.num_vertices):
            expect = sp.expand(sp.sympify(table.get(sk.vertices[v], "0"),
                                          locals={str(s): s for s in xs}))
            assert O.to_sympy(tau.values[v], xs) == expect, (p, sk.vertices[v])
            assert oracle[v] == expect


def test_octahedron_thom_matches_unique_oracle():
    xi = (1, 2, 4)
    pol = polarize(OCT, xi)
    tb = thom_basis(pol)
    xs = O.symbols(3)
    for p in range(6):
        oracle, free = O.thom_solutions(OCT, xi, p)
        assert free == 0
        assert {v: O.to_sympy(tb[p].values[v], xs) for v in range(6)} == oracle


def test_thom_classes_fail_without_noncyclicity():
    pol = polarize(ramified_cover(2), (1, 2))
    with pytest.raises(HypothesesViolated):
        thom_basis(pol).all()


def test_decompose_basis_elements():
    pol = polarize(OCT, (1, 2, 4))
    tb = thom_basis(pol)
    for m, cls in OCT_BASES.items():
        for f in cls:
            coeffs = decompose(f, pol, tb)
            total = zero_class(OCT, m)
            for p, h in coeffs.items():
                if h:
                    total = total + tb[p] * h
            assert total == f
