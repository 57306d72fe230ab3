import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import linearized_from_ordinary, naive_annihilator, span_elements
from rmlab.errors import DependentEmbedding, TowerMismatch
from rmlab.ffield import tower_create
from rmlab.fqspace import enumerate_upto, full_space, span_of, zero_space
from rmlab.qlinpoly import (
    QLinPoly,
    annihilator,
    annihilator_of_points,
    compose,
    embed_vector,
    frobenius_shift,
    kernel_of,
    moore_det,
    moore_det_nonzero,
    power_compose_annihilator,
)

X, X2 = 2, 4


def test_eval_examples(f8):
    ident = QLinPoly.identity(f8)
    assert all(ident(a) == a for a in f8.elements())
    f = QLinPoly(f8, [X, 1])
    assert f(X) == 0
    assert f(0) == 0
    assert QLinPoly(f8).q_degree is None
    assert f.q_degree == 1 and f.is_monic()


def test_compose_examples(f8):
    f = QLinPoly(f8, [3, 5, 7])
    assert compose(QLinPoly.identity(f8), f) == f
    xq = QLinPoly.x_power(f8, 1)
    assert compose(xq, xq) == QLinPoly.x_power(f8, 2)


def test_compose_not_commutative(f8):
    f, g = QLinPoly(f8, [X, 1]), QLinPoly(f8, [1, X])
    assert compose(f, g) != compose(g, f)


def test_moore_examples(f8):
    assert moore_det(f8, [1, X]) == f8.add(X2, X)
    assert moore_det_nonzero(f8, [1, X])
    assert not moore_det_nonzero(f8, [1, 1])
    assert moore_det_nonzero(f8, [5])


def test_annihilator_examples(f8):
    assert annihilator_of_points(f8, []) == QLinPoly.identity(f8)
    assert annihilator_of_points(f8, [X]) == QLinPoly(f8, [X, 1])
    f = annihilator_of_points(f8, [1, X])
    assert f.q_degree == 2 and f.is_monic()
    assert all(f(a) == 0 for a in (0, 1, X, X ^ 1))
    with pytest.raises(DependentEmbedding):
        annihilator_of_points(f8, [X, X])


def test_power_compose_examples(f8):
    alphas = [1, X, X2]
    V = span_of([(0, 1, 0)])
    assert power_compose_annihilator(f8, V, alphas, 0) == annihilator(f8, V, alphas)
    assert power_compose_annihilator(f8, zero_space(3), alphas, 2) == QLinPoly.x_power(f8, 2)
    assert power_compose_annihilator(f8, V, alphas, 1) == QLinPoly(f8, [0, X2, 1])


def test_kernel_examples(f8):
    alphas = [1, X, X2]
    assert kernel_of(QLinPoly.identity(f8), full_space(3), alphas) == zero_space(3)
    V = span_of([(1, 1, 0), (0, 0, 1)])
    assert kernel_of(annihilator(f8, V, alphas), full_space(3), alphas) == V
    fixed = QLinPoly(f8, [1, 1])  # X^q - X in char 2
    assert kernel_of(fixed, full_space(3), alphas) == span_of([(1, 0, 0)])


def test_annihilator_matches_product_oracle_f16(f16):
    alphas = [1, 2, 4, 8]
    for V in enumerate_upto(4, 3):
        ws = [embed_vector(f16, b, alphas) for b in V.basis]
        f = annihilator(f16, V, alphas)
        pts = span_elements(f16, ws)
        assert f.is_monic() and f.q_degree == V.dim
        assert {a for a in f16.elements() if f(a) == 0} == pts
        assert linearized_from_ordinary(f16, naive_annihilator(f16, sorted(pts))) == list(f.coeffs)


def test_annihilator_over_f9():
    t = tower_create(3, 1, 2)
    rng = random.Random(3)
    for _ in range(5):
        w = t.random_nonzero(rng)
        f = annihilator_of_points(t, [w])
        pts = span_elements(t, [w])
        assert linearized_from_ordinary(t, naive_annihilator(t, sorted(pts))) == list(f.coeffs)


def test_mixed_towers_rejected(f8, f16):
    with pytest.raises(TowerMismatch):
        QLinPoly(f8, [1]) + QLinPoly(f16, [1])


def test_json_roundtrip(f2_28):
    f = QLinPoly(f2_28, [12345, 0, 1])
    assert QLinPoly.from_json(f.to_json()) == f


coeff_lists = st.lists(st.integers(0, (1 << 28) - 1), max_size=4)


@given(coeff_lists, coeff_lists, coeff_lists, st.integers(0, (1 << 28) - 1), st.integers(0, (1 << 28) - 1))
@settings(max_examples=60, deadline=None)
def test_algebra_properties(a, b, c, x, y):
    t = tower_create(2, 1, 28)
    f, g, h = QLinPoly(t, a), QLinPoly(t, b), QLinPoly(t, c)
    # evaluation is additive and composition is evaluation of evaluation
    assert f(t.add(x, y)) == t.add(f(x), f(y))
    assert compose(g, f)(x) == g(f(x))
    assert compose(compose(h, g), f) == compose(h, compose(g, f))
    assert compose(h, f + g) == compose(h, f) + compose(h, g)
    assert frobenius_shift(f, 2)(x) == t.frob(f(x), 2)


@given(st.lists(st.integers(1, (1 << 28) - 1), min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_annihilator_vanishes_at_28(ws):
    t = tower_create(2, 1, 28)
    if not moore_det_nonzero(t, ws):
        return
    f = annihilator_of_points(t, ws)
    assert f.q_degree == len(ws)
    for p in span_elements(t, ws):
        assert f(p) == 0
