from __future__ import annotations

import random

import pytest
import sympy

from services.errors import FormatError
from services.verlinde import (
    EMPTY,
    NormalDeco,
    chebyshev_u,
    deco_concat,
    deco_loop_normal_form,
    deco_normal_form,
    deco_redexes,
    deco_reverse,
    is_normal,
    normalize_randomly,
    parse_deco,
    to_symbols,
)

x = sympy.Symbol("x")


def test_normal_form_examples():
    nf = deco_normal_form("bbobo ob")
    assert nf == NormalDeco(0, "BobOb")
    assert to_symbols(nf.word) == "▲○•△•"
    assert deco_normal_form("bbb") == NormalDeco(1, "b")
    assert deco_normal_form("") == EMPTY


def test_concat():
    assert deco_concat(NormalDeco(0, "B"), NormalDeco(0, "B")) == NormalDeco(1, "B")
    assert deco_concat(NormalDeco(0, "bo"), NormalDeco(0, "Ob")) == NormalDeco(1, "bob")
    a = NormalDeco(0, "BoB")
    assert deco_concat(a, EMPTY) == a


def test_reverse():
    assert deco_reverse(NormalDeco(0, "Bob")) == NormalDeco(0, "boB")
    assert deco_reverse(NormalDeco(0, "O")) == NormalDeco(0, "O")
    r = deco_reverse(NormalDeco(0, "bO"))
    assert deco_concat(r, NormalDeco(0, "bO")) == NormalDeco(0, "OBO")


def test_is_normal_and_redexes():
    assert is_normal("bObO")
    assert not is_normal("bB")
    assert deco_redexes("bBoO") == [0, 2]


def test_parse_deco_rejects_other_letters():
    with pytest.raises(FormatError):
        parse_deco("bx")


def test_random_orders_agree():
    rng = random.Random(7)
    for word in ("bbobooboBOob", "BBBBbbbb", "obOBobOBBBoo"):
        expected = deco_normal_form(word)
        for _ in range(10):
            assert normalize_randomly(word, rng) == expected


def test_loop_normal_form():
    assert deco_loop_normal_form("OB").word == "BO"
    assert deco_loop_normal_form("bOBo") == deco_loop_normal_form("Bo" + "bO")
    assert deco_loop_normal_form("") == EMPTY


def test_chebyshev():
    assert chebyshev_u(0) == sympy.Poly(1, x)
    assert chebyshev_u(2) == sympy.Poly(x**2 - 1, x)
    assert chebyshev_u(3) == sympy.Poly(x**3 - 2 * x, x)
    with pytest.raises(ValueError):
        chebyshev_u(-1)
