import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedsim import INF, DomainError, GradeDomain, MinGradeMatrix, Pseudometric, Relation, ShapeError
from gradedsim.grades import collapse, compose, from_family, is_lax_monoidal, lax_monoidal_closure, slice

from oracles import as_floats, compose_loops, naive_closure

NAT, RAT, UNIT = GradeDomain.NAT, GradeDomain.RATIONAL, GradeDomain.UNIT

grade = st.one_of(st.integers(0, 12), st.just(INF))


@st.composite
def nat_matrices(draw, n=None):
    n = n or draw(st.integers(1, 5))
    return MinGradeMatrix([[draw(grade) for _ in range(n)] for _ in range(n)])


@st.composite
def relations(draw, n):
    return Relation([[draw(st.booleans()) for _ in range(n)] for _ in range(n)])


# ---------------------------------------------------------------- domains


def test_unit_addition_truncates():
    assert UNIT.add(Fraction(3, 4), Fraction(1, 2)) == 1
    assert RAT.add(Fraction(3, 4), Fraction(1, 2)) == Fraction(5, 4)


@pytest.mark.parametrize("dom", [NAT, RAT, UNIT])
def test_infinity_absorbs(dom):
    assert dom.add(INF, dom.zero) is INF
    assert dom.add(dom.zero, INF) is INF


@given(st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1))
def test_unit_addition_monoid(a, b, c):
    add = UNIT.add
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)
    assert add(a, 0) == a


def test_infinity_orders_above_numbers():
    assert 10**9 < INF and Fraction(1, 3) < INF and not INF < INF
    assert max(3, INF) is INF and min(3, INF) == 3


# ---------------------------------------------------------------- slice


def test_slice_diagonal_is_identity():
    assert slice(MinGradeMatrix.diagonal(3), 0) == Relation.identity(3)


def test_slice_strictly_above_threshold():
    m = MinGradeMatrix([[0, 3], [INF, 0]])
    assert slice(m, 2) == Relation.identity(2)


def test_slice_random_matches_filter():
    rng = random.Random(5)
    rows = [[rng.choice([0, 1, 3, 5, 6, 9, INF]) for _ in range(4)] for _ in range(4)]
    got = slice(MinGradeMatrix(rows), 5)
    expected = [[v != INF and v <= 5 for v in row] for row in rows]
    assert got.bits.tolist() == expected


def test_slice_outside_unit_domain():
    with pytest.raises(DomainError):
        slice(MinGradeMatrix.zeros(2, UNIT), Fraction(3, 2))


@given(nat_matrices(), st.integers(0, 12), st.integers(0, 12))
def test_slice_monotone(m, a, b):
    lo, hi = sorted((a, b))
    assert slice(m, lo) <= slice(m, hi)


# ---------------------------------------------------------------- collapse


def test_collapse_examples():
    assert collapse(MinGradeMatrix.constant(3, INF)) == Relation.empty(3)
    assert collapse(MinGradeMatrix.diagonal(3)) == Relation.identity(3)
    m = MinGradeMatrix([[0, INF, INF], [INF, INF, 7], [INF, INF, INF]])
    assert collapse(m).pairs() == [(0, 0), (1, 2)]


def test_collapse_unit_domain():
    m = MinGradeMatrix([[0, 1], [INF, Fraction(1, 2)]], UNIT)
    assert collapse(m).pairs() == [(0, 0), (0, 1), (1, 1)]


# ---------------------------------------------------------------- closure


def test_closure_chain():
    m = MinGradeMatrix([[INF, 1, INF], [INF, INF, 2], [INF, INF, INF]])
    c = lax_monoidal_closure(m)
    assert c[0, 2] == 3 and all(c[i, i] == 0 for i in range(3))
    assert as_floats(c) == naive_closure(as_floats(m))


def test_closure_of_closed_is_unchanged():
    m = MinGradeMatrix([[0, 1, 3], [INF, 0, 2], [INF, INF, 0]])
    assert lax_monoidal_closure(m) == m


def test_closure_random_5x5_matches_rule_iteration():
    rng = random.Random(11)
    for _ in range(20):
        rows = [[rng.choice([INF, INF, rng.randint(0, 9)]) for _ in range(5)] for _ in range(5)]
        m = MinGradeMatrix(rows)
        assert as_floats(lax_monoidal_closure(m)) == naive_closure(as_floats(m))


@given(nat_matrices())
def test_closure_is_closure_operator(m):
    c = lax_monoidal_closure(m)
    assert c <= m
    assert lax_monoidal_closure(c) == c
    assert is_lax_monoidal(c)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(nat_matrices(n), nat_matrices(n))))
def test_closure_monotone(pair):
    a, b = pair
    lo = MinGradeMatrix([[min(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)])
    assert lax_monoidal_closure(lo) <= lax_monoidal_closure(a)


@given(nat_matrices())
def test_collapse_of_closure_is_preorder(m):
    r = collapse(lax_monoidal_closure(m))
    assert Relation.identity(r.size) <= r
    assert compose(r, r) <= r


def test_closure_unit_domain_truncates():
    q = Fraction(3, 4)
    m = MinGradeMatrix([[0, q, INF], [q, 0, q], [INF, q, 0]], UNIT)
    assert lax_monoidal_closure(m)[0, 2] == 1


# ---------------------------------------------------------------- compose


def test_compose_unit_and_zero():
    r = Relation([[1, 0, 1], [0, 1, 1], [1, 0, 0]])
    assert compose(r, Relation.identity(3)) == r
    assert compose(Relation.empty(3), r) == Relation.empty(3)


def test_compose_random_matches_triple_loop():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rng.random((5, 5)) < 0.4, rng.random((5, 5)) < 0.4
        assert compose(Relation(a), Relation(b)).bits.tolist() == compose_loops(a.tolist(), b.tolist())


@given(relations(5), relations(5), relations(5))
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_compose_carrier_mismatch():
    with pytest.raises(ShapeError):
        compose(Relation.identity(2), Relation.identity(3))


# ---------------------------------------------------------------- from_family


def test_from_family_examples():
    assert from_family([(0, Relation.identity(3))]) == MinGradeMatrix.diagonal(3)
    r = Relation([[0, 1], [1, 0]])
    m = from_family([(2, r), (5, r)])
    assert m.finite_values() == [2]


@given(st.lists(st.tuples(st.integers(0, 9), relations(3)), min_size=1, max_size=5))
def test_from_family_slices_contain_inputs(fam):
    m = from_family(fam)
    for g, r in fam:
        assert r <= slice(m, g)


def test_from_family_mismatches():
    with pytest.raises(ShapeError):
        from_family([(0, Relation.identity(2)), (1, Relation.identity(3))])
    with pytest.raises(ShapeError):
        from_family([(Fraction(3, 2), Relation.identity(2))], UNIT)


# ---------------------------------------------------------------- pseudometric


def test_pseudometric_axioms_checked():
    with pytest.raises(DomainError, match="symmetry"):
        Pseudometric([[0, "1/2"], ["1/4", 0]])
    with pytest.raises(DomainError, match="triangle"):
        Pseudometric([[0, "1/10", 1], ["1/10", 0, "1/10"], [1, "1/10", 0]])
    assert Pseudometric.discrete(3)[0, 1] == 1
