from __future__ import annotations

import pytest

from conftest import caffine, fc
from services.coxeter import CoxeterGraph, GraphKind, enumerate_fc, identity_element
from services.errors import DescriptorError, EmptyElementError, InvalidGraphError
from services.heap import (
    TypeIDescriptor,
    TypeIFamily,
    TypeIIDescriptor,
    TypeIIForm,
    build_heap,
    is_type_I,
    is_type_II,
    make_type_I,
    make_type_II,
    n_value,
    odd_even_sets,
    render_heap,
)


def test_heap_covers_follow_the_word():
    h = build_heap(fc(caffine(5), 3, 2, 1, 2, 5, 4, 6, 5))
    # a terceira letra (s1) fica logo abaixo da segunda (s2)
    assert (2, 3) in h.covers
    assert h.leq(2, 3)
    assert not h.leq(3, 2)
    assert h.rows == ((3, 5), (2, 4, 6), (1, 5), (2,))


def test_small_heaps():
    single = build_heap(fc(caffine(3), 2))
    assert len(single.entries) == 1 and not single.covers
    pair = build_heap(fc(caffine(3), 1, 3))
    assert not pair.leq(1, 2) and not pair.leq(2, 1)


def test_n_value():
    g = caffine(4)
    assert n_value(fc(g, 2, 1, 3, 5)) == 3
    assert n_value(fc(g, 1, 3, 5)) == 3
    assert n_value(fc(g, 4)) == 1
    with pytest.raises(EmptyElementError):
        n_value(identity_element(g))


def test_make_type_I_words():
    g = caffine(4)
    e = make_type_I(g, TypeIDescriptor(TypeIFamily.Z_L_EVEN, 2, 3, 1))
    assert e.word == (2, 1, 2, 3, 4, 5, 4, 3)
    e = make_type_I(g, TypeIDescriptor(TypeIFamily.Z_R_EVEN, 1, 1, 1))
    assert e.word == (1, 2, 3, 4, 5, 4, 3, 2, 1)
    assert make_type_I(g, TypeIDescriptor(TypeIFamily.Z_IJ, 3, 3)).word == (3,)


def test_make_type_I_bounds():
    with pytest.raises(DescriptorError):
        make_type_I(caffine(4), TypeIDescriptor(TypeIFamily.Z_L_EVEN, 1, 3, 1))
    with pytest.raises(InvalidGraphError):
        make_type_I(CoxeterGraph(GraphKind.B, 4), TypeIDescriptor(TypeIFamily.Z_R_ODD, 1, 5, 0))


@pytest.mark.parametrize("desc", [
    TypeIDescriptor(TypeIFamily.Z_IJ, 1, 5),
    TypeIDescriptor(TypeIFamily.Z_IJ, 4, 2),
    TypeIDescriptor(TypeIFamily.Z_L_EVEN, 3, 2, 2),
    TypeIDescriptor(TypeIFamily.Z_L_ODD, 2, 4, 1),
    TypeIDescriptor(TypeIFamily.Z_R_EVEN, 2, 4, 1),
    TypeIDescriptor(TypeIFamily.Z_R_ODD, 1, 5, 0),
])
def test_type_I_elements_have_n_value_one(desc):
    e = make_type_I(caffine(4), desc)
    assert n_value(e) == 1
    assert is_type_I(e) is not None


def test_is_type_I():
    g = caffine(4)
    assert is_type_I(fc(g, 2, 1, 2, 3, 4, 5, 4, 3)) == TypeIDescriptor(TypeIFamily.Z_L_EVEN, 2, 3, 1)
    assert is_type_I(fc(g, 1, 3)) is None
    assert is_type_I(fc(g, 2, 1, 3, 5)) is None


def test_is_type_I_bounces_off_the_wall():
    g = caffine(2)
    assert is_type_I(fc(g, 1, 2, 1)) == TypeIDescriptor(TypeIFamily.Z_L_ODD, 1, 1, 0)
    assert is_type_I(fc(g, 3, 2, 3)) == TypeIDescriptor(TypeIFamily.Z_R_ODD, 3, 3, 0)
    assert is_type_I(fc(caffine(4), 5, 4, 5)) == TypeIDescriptor(TypeIFamily.Z_R_ODD, 5, 5, 0)
    assert make_type_I(g, TypeIDescriptor(TypeIFamily.Z_L_ODD, 1, 1, 0)).word == (1, 2, 1)
    with pytest.raises(DescriptorError):
        make_type_I(g, TypeIDescriptor(TypeIFamily.Z_L_ODD, 1, 1, 1))


@pytest.mark.parametrize("n", [2, 3])
def test_type_I_exactly_when_n_value_is_one(n):
    for e in enumerate_fc(caffine(n), 7):
        if not e.is_identity:
            assert (is_type_I(e) is not None) == (n_value(e) == 1), str(e)


def test_odd_even_sets():
    assert odd_even_sets(2) == ((1, 3), (2,))
    assert odd_even_sets(3) == ((1, 3), (2, 4))
    assert odd_even_sets(4) == ((1, 3, 5), (2, 4))


def test_make_type_II():
    assert make_type_II(caffine(2), TypeIIDescriptor(TypeIIForm.XE)).word == (2,)
    assert make_type_II(caffine(3), TypeIIDescriptor(TypeIIForm.XO)).word == (1, 3)
    y1 = make_type_II(caffine(2), TypeIIDescriptor(TypeIIForm.Y_K, 1))
    assert y1.cf_rows == ((1, 3), (2,))
    with pytest.raises(DescriptorError):
        make_type_II(caffine(2), TypeIIDescriptor(TypeIIForm.Y_K, 0))
    with pytest.raises(InvalidGraphError):
        make_type_II(CoxeterGraph(GraphKind.B, 3), TypeIIDescriptor(TypeIIForm.XO))


def test_type_II_in_odd_rank():
    g = caffine(3)
    assert make_type_II(g, TypeIIDescriptor(TypeIIForm.XE)).word == (2, 4)
    y1 = make_type_II(g, TypeIIDescriptor(TypeIIForm.Y_K, 1))
    assert y1.cf_rows == ((1, 3), (2, 4))
    assert is_type_II(y1) == TypeIIDescriptor(TypeIIForm.Y_K, 1)


def test_is_type_II():
    g = caffine(2)
    assert is_type_II(fc(g, 1, 3, 2)) == TypeIIDescriptor(TypeIIForm.Y_K, 1)
    assert is_type_II(fc(g, 2, 1, 3)) == TypeIIDescriptor(TypeIIForm.XE_Y_K_XO, 0)
    assert is_type_II(fc(caffine(4), 2, 1, 3, 5)) is None
    assert is_type_II(identity_element(g)) is None


def test_render_heap(golden):
    assert render_heap(fc(caffine(3), 1, 3)) == "  1   3"
    assert render_heap(identity_element(caffine(3))) == ""
    e = fc(caffine(5), 3, 2, 1, 2, 5, 4, 6, 5)
    assert render_heap(e) + "\n" == golden("heap_c5_32125465.txt")
