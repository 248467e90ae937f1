import random

import pytest

from conftest import random_combination
from gkm.builders import johnson, johnson_subsets
from gkm.cohomology import basis, constant_class, down_product, flow_out, is_class, thom_basis
from gkm.errors import BadParameters
from gkm.exactalg import Polynomial
from gkm.schubert import (
    bruhat_path,
    divided_difference,
    double_schubert_table,
    format_table,
    random_path,
    schubert_class,
    self_indexing_offset,
    standard_polarization,
    top_subset,
    weyl_action,
    _swap,
)

J = johnson(4, 2)
POL = standard_polarization(J)


def test_bruhat_paths_climb_one_step_at_a_time():
    subsets = johnson_subsets(J)
    top = top_subset(4, 2)
    for v, S in enumerate(subsets):
        path = bruhat_path(S, 4)
        assert len(path) == POL.index[J.vertex(subsets.index(top))] - POL.index[v]
        cur = S
        for i in path:
            nxt = _swap(cur, i)
            assert POL.index[subsets.index(nxt)] == POL.index[subsets.index(cur)] + 1
            cur = nxt
        assert cur == top
    assert bruhat_path(top, 4) == []
    assert len(bruhat_path({1, 2}, 4)) == 4


def test_schubert_extremes():
    subsets = johnson_subsets(J)
    low = schubert_class(J, subsets.index(frozenset({1, 2})))
    assert all(v == Polynomial.one(4) for v in low.values)


def test_path_independence():
    rng = random.Random(4)
    subsets = johnson_subsets(J)
    for v, S in enumerate(subsets):
        ref = schubert_class(J, v)
        for _ in range(3):
            assert schubert_class(J, v, random_path(S, 4, rng)) == ref


def test_schubert_support_and_value():
    for v in range(J.num_vertices):
        f = schubert_class(J, v)
        assert is_class(J, f.values)
        assert f.support() <= flow_out(POL, v)
        assert f.values[v] == down_product(POL, v)
        assert f.degree == POL.index[v]


def test_divided_difference_on_simple_classes():
    one = constant_class(J, Polynomial.one(4))
    for i in range(1, 4):
        assert divided_difference(i, one).is_zero()
    x1 = constant_class(J, Polynomial.variable(4, 0))
    d = divided_difference(1, x1)
    assert all(v == Polynomial.one(4) for v in d.values)
    with pytest.raises(BadParameters):
        divided_difference(4, one)


def test_weyl_action_preserves_classes():
    rng = random.Random(8)
    for m in (1, 2):
        cls = basis(J, m)
        for _ in range(4):
            f = random_combination(rng, cls)
            for i in range(1, 4):
                g = weyl_action(i, f)
                assert is_class(J, g.values)
                assert weyl_action(i, g) == f
                assert is_class(J, divided_difference(i, f).values)


def test_double_schubert_table():
    table = double_schubert_table(4, 2)
    tb = thom_basis(POL)
    assert set(table) == {"S=" + name for name in J.vertices}
    for p in range(J.num_vertices):
        row = table["S=" + J.vertices[p]]
        assert row["S=" + J.vertices[p]] == down_product(POL, p)
        for q in range(J.num_vertices):
            key = "S=" + J.vertices[q]
            if q in flow_out(POL, p):
                assert row[key] == tb[p].values[q]
            else:
                assert key not in row
    assert all(v == Polynomial.one(4) for v in table["S={1,2}"].values())
    text = format_table(table)
    assert len(text.splitlines()) == sum(len(r) for r in table.values())


def test_self_indexing():
    assert self_indexing_offset(J) == {3}
    assert self_indexing_offset(johnson(5, 2)) == {3}
