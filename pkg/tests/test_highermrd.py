import itertools
import random

import pytest

from rmlab.errors import Disagreement, PartitionGuardExceeded
from rmlab.ffield import tower_create
from rmlab.fqspace import enumerate_upto, intersect, span_of
from rmlab.gabidulin import (
    GabidulinCode,
    LinearCode,
    dual_code_linear,
    image_dim,
    is_mrd,
    random_gabidulin,
    random_linear_code,
)
from rmlab.highermrd import (
    actual_intersection_dim,
    equivalence_harness,
    generic_intersection_dim,
    is_gkp_ell,
    is_ld_mrd,
    is_ld_mrd_via_dual,
    is_mrd_ell,
    ld_witness_translation,
    verify_ld_witness,
)

X, X2 = 2, 4
E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def sp(*vs):
    return span_of(list(vs), 3)


def test_generic_examples():
    assert generic_intersection_dim([sp(E1, E2)], 2) == 2
    assert generic_intersection_dim([sp(E1, E2), sp(E2, E3)], 2) == 2
    assert generic_intersection_dim([sp(E1), sp(E2)], 2) == 0
    with pytest.raises(PartitionGuardExceeded):
        generic_intersection_dim([sp(E1)] * 9, 2)


def test_generic_pairs_closed_form():
    spaces = list(enumerate_upto(3, 3))
    for k in (1, 2, 3):
        for a, b in itertools.product([V for V in spaces if V.dim <= k], repeat=2):
            expect = max(intersect(a, b).dim, a.dim + b.dim - k)
            assert generic_intersection_dim([a, b], k) == expect


def test_actual_examples(f2_28):
    C = random_gabidulin(f2_28, 3, 2, random.Random(1))
    V = sp(E1, E2)
    assert actual_intersection_dim(f2_28, C.generator, [V]) == image_dim(f2_28, C.generator, V)
    assert actual_intersection_dim(f2_28, C.generator, [V, V, V]) == 2


def test_actual_at_least_generic_on_mrd(f8):
    rng = random.Random(2)
    spaces = list(enumerate_upto(3, 2))
    for _ in range(4):
        C = random_gabidulin(f8, 3, 2, rng)
        for a, b in itertools.product(spaces, repeat=2):
            assert actual_intersection_dim(f8, C.generator, [a, b]) >= generic_intersection_dim([a, b], 2)


def test_mrd_ell_examples(f8):
    C = GabidulinCode(f8, 2, [1, X, X2])
    v = is_mrd_ell(C, 1)
    assert v.holds and v.tuples_checked == 15
    bad = LinearCode(f8, [[1, 0, 0], [0, 1, 0]])
    v = is_mrd_ell(bad, 1)
    assert not v.holds and "not_mrd" in v.witness
    assert v.to_json()["holds"] is False


def test_mrd_ell_large_field(f2_28):
    C = random_gabidulin(f2_28, 3, 2, random.Random(5))
    v = is_mrd_ell(C, 2)
    assert v.holds and v.tuples_checked == 225
    assert is_mrd_ell(C, 2, mode="fast").holds
    s = is_mrd_ell(C, 3, mode="sampled", samples=200, rng=random.Random(0))
    assert s.holds and s.tuples_checked == 200
    with pytest.raises(ValueError):
        is_mrd_ell(C, 2, mode="sampled")


def test_ld_mrd_examples(f8):
    C = GabidulinCode(f8, 1, [1, X, X2])
    assert is_ld_mrd(C, 1).holds
    assert is_ld_mrd(C, 0).holds
    rep = LinearCode(f8, [[1, 1, 1]])
    v = is_ld_mrd(rep, 1)
    assert not v.holds and verify_ld_witness(rep, v.witness)
    assert not is_ld_mrd_via_dual(rep, 1).holds
    assert is_ld_mrd_via_dual(C, 0).holds == is_mrd(C)


def test_ld_mrd_large_field(f2_28):
    C = random_gabidulin(f2_28, 3, 1, random.Random(7))
    v = is_ld_mrd_via_dual(C, 2)
    assert v.holds and "MRD(3)" in v.property


def test_ld_brute_vs_dual_on_f8():
    t = tower_create(2, 1, 3)
    rng = random.Random(30)
    for i in range(10):
        C = random_gabidulin(t, 3, 1, rng) if i % 2 else random_linear_code(t, 3, 1, rng)
        for ell in (1, 2):
            assert is_ld_mrd(C, ell).holds == is_ld_mrd_via_dual(C, ell).holds


def test_translation_invariance(f8):
    rng = random.Random(4)
    C = random_linear_code(f8, 3, 1, rng)
    words = list(C.codewords())
    for _ in range(20):
        y = [f8.random_element(rng) for _ in range(3)]
        lst = rng.sample(words, 3)
        assert ld_witness_translation(f8, y, lst, rng.choice(words))


def test_gkp_examples(f8, f2_28):
    assert is_gkp_ell(random_gabidulin(f2_28, 3, 2, random.Random(0)), 2).holds
    assert not is_gkp_ell(LinearCode(f8, [[1, 0, 0], [0, 1, 0]]), 1).holds


def test_harness_degenerate(f8):
    C = LinearCode(f8, [[1, 1, 0], [0, 1, X]])
    assert not is_mrd(C)
    rep = equivalence_harness(C, 1)
    assert rep["agree"] and rep["gkp"] is False and rep["mrd_ell"] is False and rep["ld_mrd_dual"] is False
    assert rep["gkp_witness"] is not None and rep["ld_witness"] is not None


def test_harness_base_case(f8):
    C = random_gabidulin(f8, 3, 2, random.Random(1))
    rep = equivalence_harness(C, 0)
    assert rep["gkp"] == rep["mrd_ell"] == rep["ld_mrd_dual"] is True


def test_harness_large_m(f2_28):
    C = random_gabidulin(f2_28, 3, 2, random.Random(2))
    rep = equivalence_harness(C, 1)
    assert rep["gkp"] and rep["mrd_ell"] and rep["ld_mrd_feasible"] is False


def test_harness_raises_on_disagreement(monkeypatch, f8):
    import rmlab.highermrd as hm

    C = random_gabidulin(f8, 3, 1, random.Random(3))
    real = hm.is_mrd_ell

    def flipped(*a, **kw):
        v = real(*a, **kw)
        v.holds = not v.holds
        return v

    monkeypatch.setattr(hm, "is_mrd_ell", flipped)
    with pytest.raises(Disagreement) as exc:
        equivalence_harness(C, 1)
    assert exc.value.report["agree"] is False


def test_dual_of_mrd_is_mrd(f8):
    rng = random.Random(12)
    for _ in range(10):
        C = random_linear_code(f8, 3, 1, rng)
        assert is_mrd(C) == is_mrd(dual_code_linear(C))
