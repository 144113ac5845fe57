from __future__ import annotations

import pytest

from conftest import caffine, fc
from services.coxeter import CoxeterGraph, GraphKind, Side, enumerate_fc
from services.errors import InvalidGraphError
from services.heap import TypeIIDescriptor, TypeIIForm, make_type_II
from services.starops import (
    StarMove,
    apply_star,
    apply_weak_star,
    classified_irreducibles,
    commuting_products,
    is_irreducible,
    is_star_irreducible,
    reduce_to_irreducible,
    star_moves,
    weak_star_moves,
)

B2 = CoxeterGraph(GraphKind.B, 2)
B3 = CoxeterGraph(GraphKind.B, 3)


def L(s, t):
    return StarMove(Side.LEFT, s, t)


def test_weak_star_on_121():
    out = apply_weak_star(fc(caffine(3), 1, 2, 1), L(1, 2))
    assert out.word == (2, 1)


def test_12_is_weak_star_irreducible():
    e = fc(caffine(3), 1, 2)
    assert weak_star_moves(e) == []
    assert is_irreducible(e)


def test_only_one_left_move():
    e = fc(caffine(5), 3, 5, 2, 4, 6, 1, 2)
    left = [m for m in weak_star_moves(e) if m.side == Side.LEFT]
    assert left == [L(3, 2)]


def test_ordinary_star():
    assert apply_star(fc(B3, 1, 2), StarMove(Side.LEFT, 1, 2, weak=False)).word == (2,)
    assert star_moves(fc(B3, 1, 3)) == []
    assert is_star_irreducible(fc(caffine(4), 1, 3, 5, 2, 4, 1, 3, 5))
    assert not is_star_irreducible(fc(caffine(4), 1, 2))


def test_right_move_mirrors_left():
    e = fc(caffine(3), 1, 2, 1)
    assert apply_weak_star(e, StarMove(Side.RIGHT, 1, 2)).word == (1, 2)


def test_irreducibles_of_b2():
    irreducible = {e.word for e in enumerate_fc(B2, 4) if not e.is_identity and is_irreducible(e)}
    assert irreducible == {(1,), (2,), (1, 2), (2, 1)}


def test_zigzag_irreducible():
    assert is_irreducible(fc(caffine(4), 1, 2, 3, 4, 5, 4, 3, 2, 1))
    assert not is_irreducible(fc(caffine(4), 1, 2, 1))


def test_reduce_121():
    trace = reduce_to_irreducible(fc(caffine(3), 1, 2, 1))
    assert len(trace.moves) == 1
    assert trace.end.length == 2 and is_irreducible(trace.end)


def test_reduce_irreducible_is_empty_trace():
    e = fc(caffine(3), 1, 3)
    trace = reduce_to_irreducible(e)
    assert trace.moves == () and trace.end == e


def test_reduce_1213():
    trace = reduce_to_irreducible(fc(caffine(4), 1, 2, 1, 3))
    assert trace.moves == (L(1, 2), L(2, 3))
    assert trace.end.word == (1, 3)


def test_commuting_products():
    assert sorted(commuting_products([1, 2, 3])) == [(), (1,), (1, 3), (2,), (3,)]


def test_classified_b2():
    words = [e.word for e in classified_irreducibles(B2, 2)]
    assert words == [(), (1,), (2,), (1, 2), (2, 1)]


def test_classified_affine_includes_type_I_and_II():
    assert ((1, 3), (2,)) in {e.cf_rows for e in classified_irreducibles(caffine(2), 3)}
    words = {e.word for e in classified_irreducibles(caffine(4), 9)}
    assert (1, 2, 3, 4, 5, 4, 3, 2, 1) in words


def test_type_II_of_odd_rank_is_listed():
    y1 = make_type_II(caffine(3), TypeIIDescriptor(TypeIIForm.Y_K, 1))
    assert is_irreducible(y1)
    assert y1.cf_rows in {e.cf_rows for e in classified_irreducibles(caffine(3), 4)}


def test_classification_requires_affine_family():
    with pytest.raises(InvalidGraphError):
        classified_irreducibles(CoxeterGraph(GraphKind.A, 3), 3)


@pytest.mark.parametrize("graph", [caffine(2), caffine(3), B3])
def test_classified_equals_brute_force_small(graph):
    brute = {e.cf_rows for e in enumerate_fc(graph, 6) if is_irreducible(e)}
    listed = {e.cf_rows for e in classified_irreducibles(graph, 6)}
    assert brute == listed


def test_weak_star_implies_star():
    for e in enumerate_fc(caffine(3), 6):
        for m in weak_star_moves(e):
            strong = StarMove(m.side, m.s, m.t, weak=False)
            assert apply_star(e, strong) == apply_weak_star(e, m)
