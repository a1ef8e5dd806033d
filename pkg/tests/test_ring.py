from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgering import (
    DeligneSplitting,
    Element,
    HodgeRing,
    elliptic_block,
    hodge_numbers,
    kunneth,
    multiply,
    power,
    punctured_line_block,
    standard_form,
    torus_ring,
    validate,
    weight_numbers,
)
from hodgering.errors import DimensionMismatch
from hodgering.exactla import Matrix

from conftest import torus_std, weight1

# H^*(T^2) written out by hand: basis 1, e1, e2, e1e2
T2_TABLE = {
    (1, 1): {},
    (1, 2): {3: 1},
    (2, 1): {3: -1},
    (2, 2): {},
    (0, 3): {3: 1},
    (1, 3): {},
}


def test_splitting_order_and_offsets():
    sp = DeligneSplitting(1, {(1, 1, 2): 1, (0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
    assert [tuple(k) for k in sp.pieces] == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 2)]
    assert sp.offsets[(1, 0, 1)] == 2
    assert sp.dim == 4 and sp.degree(3) == 2


def test_torus_t2_structure_constants_by_hand():
    r, sigma = torus_ring(standard_form(1))
    for (i, j), want in T2_TABLE.items():
        assert r.product(i, j) == want
    assert sigma.sparse() == {3: 1}


def test_multiply_examples():
    r, sigma = torus_std(1)
    e1, e2 = r.basis_element(1), r.basis_element(2)
    assert multiply(r, r.unit, e1) == e1
    assert multiply(r, e1, e2).sparse() == {3: 1}
    assert multiply(r, e1, e1).is_zero()


def test_power_examples():
    r, sigma = torus_std(2)
    assert power(r, sigma, 0) == r.unit
    top = power(r, sigma, 2)
    assert top.sparse() == {15: 2}  # (e1e2 + e3e4)^2 = 2 e1e2e3e4
    assert power(r, sigma, 3).is_zero()


def test_dimension_mismatch():
    r, _ = torus_std(1)
    with pytest.raises(DimensionMismatch):
        multiply(r, r.unit, Element.zero(3))
    with pytest.raises(DimensionMismatch):
        Element.zero(2) + Element.zero(3)


def test_hodge_and_weight_numbers():
    r, _ = torus_std(2)
    F = hodge_numbers(r)
    for l in range(5):
        assert F[(l, l)] == comb(4, l)
        assert sum(n for (p, ll), n in F.items() if ll == l) == comb(4, l)
    assert sum(F.values()) == 16
    ec = kunneth(elliptic_block(), punctured_line_block(), d=1)
    # a⊗t and b⊗t each span a one-dimensional piece of weight 3
    assert ec.splitting.piece_dim(2, 1, 2) == ec.splitting.piece_dim(1, 2, 2) == 1
    assert weight_numbers(ec)[(3, 2)] == 2


def test_constructors_validate():
    for r in [torus_std(1)[0], torus_std(2)[0], elliptic_block(), punctured_line_block(), weight1(1)[0], weight1(2)[0]]:
        rep = validate(r)
        assert rep.passed, rep.violations[:3]


def test_validate_bad_bidegree():
    r, _ = torus_std(1)
    mult = dict(r.mult)
    mult[(1, 1)] = {1: 1}
    rep = validate(HodgeRing(r.splitting, mult))
    assert not rep.passed
    bad = [v for v in rep.violations if v.check == "bidegree"]
    assert bad and bad[0].witness == (1, 1)


def test_validate_unit_piece():
    sp = DeligneSplitting(1, {(0, 0, 0): 2})
    rep = validate(HodgeRing(sp, {(0, 0): {0: 1}, (0, 1): {1: 1}}))
    assert "unit piece" in rep.names()


def test_validate_out_of_bounds_piece():
    sp = DeligneSplitting(1, {(0, 0, 0): 1, (3, 3, 3): 1})
    rep = validate(HodgeRing(sp, {(0, 0): {0: 1}, (0, 1): {1: 1}}))
    assert "bounds" in rep.names()


def test_validate_associativity_violation():
    # x, y in (1,1,2), z in (2,2,4), w in (3,3,6); x*x = z, x*z = y*z = w, x*y = 0
    # then (x*x)*y = w but x*(x*y) = 0
    sp = DeligneSplitting(3, {(0, 0, 0): 1, (1, 1, 2): 2, (2, 2, 4): 1, (3, 3, 6): 1})
    mult = {(0, j): {j: 1} for j in range(5)}
    mult[(1, 1)] = {3: 1}
    mult[(1, 3)] = {4: 1}
    mult[(2, 3)] = {4: 1}
    rep = validate(HodgeRing(sp, mult))
    assert "associativity" in rep.names()
    del mult[(2, 3)]
    assert validate(HodgeRing(sp, mult)).passed


def test_validate_unit_law():
    r, _ = torus_std(1)
    bad = HodgeRing(r.splitting, {**r.mult, (0, 1): {1: 2}})
    assert "unit law" in validate(bad).names()


def test_validate_odd_square():
    sp = DeligneSplitting(1, {(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 2): 1})
    mult = {(0, j): {j: 1} for j in range(3)}
    mult[(1, 1)] = {2: 1}
    assert "graded commutativity" in validate(HodgeRing(sp, mult)).names()


def test_conjugation_checks():
    E = elliptic_block()
    assert validate(E).passed
    # conjugation fixing p is not multiplicative: a*b = p but b*a = -p
    bad_conj = Matrix.from_columns(4, [{0: 1}, {2: 1}, {1: 1}, {3: 1}])
    bad = HodgeRing(E.splitting, E.mult, conjugation=bad_conj)
    assert "conjugation multiplicative" in validate(bad).names()
    asym = HodgeRing(
        DeligneSplitting(1, {(0, 0, 0): 1, (1, 0, 1): 1}),
        {(0, 0): {0: 1}, (0, 1): {1: 1}},
        conjugation=Matrix.identity(2),
    )
    names = validate(asym).names()
    assert "conjugation pieces" in names or "hodge symmetry" in names


def test_upper_triangular_only():
    r, _ = torus_std(1)
    with pytest.raises(ValueError):
        HodgeRing(r.splitting, {(2, 1): {3: -1}})


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_graded_commutativity_elements(xs, ys):
    r, _ = torus_std(1)
    # homogeneous parts in H^1: x = a e1 + b e2, y = c e1 + d e2
    x = r.element({1: xs[0], 2: xs[1]})
    y = r.element({1: ys[0], 2: ys[1]})
    assert multiply(r, x, y) == -1 * multiply(r, y, x)
    # mixed element with even part commutes up to the sign on the odd-odd part
    z = r.element({0: xs[2], 3: xs[3]})
    assert multiply(r, z, x) == multiply(r, x, z)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=48, max_size=48))
def test_associativity_and_bidegree_random_elements(cs):
    r, _ = weight1(1)
    n = r.dim
    x, y, z = (r.element({i: cs[k * 16 + i] for i in range(n)}) for k in range(3))
    assert multiply(r, multiply(r, x, y), z) == multiply(r, x, multiply(r, y, z))
    for i in range(n):
        for j in range(n):
            prod = r.product(i, j)
            if prod:
                ki, kj = r.splitting.key(i), r.splitting.key(j)
                want = (ki.p + kj.p, ki.q + kj.q, ki.l + kj.l)
                assert {tuple(r.splitting.key(k)) for k in prod} == {want}


def test_rational_coefficients_exact():
    r, _ = torus_std(1)
    x = r.element({1: Fraction(1, 3)})
    y = r.element({2: Fraction(3, 7)})
    assert multiply(r, x, y).sparse() == {3: Fraction(1, 7)}
