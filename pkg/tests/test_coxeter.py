from __future__ import annotations

import pytest

from conftest import caffine, fc
from services.coxeter import (
    CoxeterGraph,
    GraphKind,
    Side,
    SignedPermTable,
    bn_oracle_counts,
    canonical_form,
    commutation_class,
    descents,
    enumerate_fc,
    find_convex_chain,
    is_fc_reduced,
    parse_graph,
)
from services.errors import (
    InvalidGeneratorError,
    InvalidGraphError,
    InvalidLengthError,
    NotFullyCommutativeError,
    UnsupportedRankError,
)

B2 = CoxeterGraph(GraphKind.B, 2)
B3 = CoxeterGraph(GraphKind.B, 3)


def test_bonds_of_affine_graph():
    g = caffine(4)
    assert g.generators == (1, 2, 3, 4, 5)
    assert g.bond(1, 2) == 4
    assert g.bond(4, 5) == 4
    assert g.bond(2, 3) == 3
    assert g.bond(1, 3) == 2


def test_bprime_uses_shifted_generators():
    g = CoxeterGraph(GraphKind.BPRIME, 3)
    assert g.generators == (2, 3, 4)
    assert g.bond(3, 4) == 4
    assert g.bond(2, 3) == 3


def test_parse_graph_rejects_unknown_kind_and_small_rank():
    with pytest.raises(InvalidGraphError):
        parse_graph("d", 3)
    with pytest.raises(InvalidGraphError):
        parse_graph("caffine", 1)
    assert parse_graph("A", 1).label == "A1"


def test_fc_verdicts_from_worked_example():
    g = caffine(3)
    assert not is_fc_reduced(g, [1, 3, 2, 1, 2])
    assert is_fc_reduced(g, [1, 2, 1, 3, 2])
    assert is_fc_reduced(g, [])


def test_non_reduced_word_is_rejected():
    assert not is_fc_reduced(caffine(3), [1, 3, 1])
    assert not is_fc_reduced(caffine(3), [2, 2])


def test_convex_chain_reports_letters():
    positions, s, t = find_convex_chain(caffine(3), [1, 3, 2, 1, 2])
    assert (s, t) == (1, 2)
    assert positions == (0, 2, 3, 4)


def test_invalid_generator():
    with pytest.raises(InvalidGeneratorError):
        is_fc_reduced(caffine(2), [4])


def test_canonical_rows():
    e = fc(caffine(5), 3, 2, 1, 2, 5, 4, 6, 5)
    assert e.cf_rows == ((3, 5), (2, 4, 6), (1, 5), (2,))
    assert fc(caffine(3), 2).cf_rows == ((2,),)
    assert fc(caffine(3), 1, 3) == fc(caffine(3), 3, 1)
    assert str(fc(caffine(3), 1, 3)) == "1 3"


def test_canonical_form_rejects_non_fc():
    with pytest.raises(NotFullyCommutativeError):
        canonical_form(caffine(3), [1, 3, 2, 1, 2])


def test_descents():
    e = fc(B3, 1, 3, 2, 1)
    assert descents(e, Side.LEFT) == {1, 3}
    assert descents(e, Side.RIGHT) == {1}
    assert descents(fc(caffine(5), 3, 5, 2, 4, 6, 1, 2), Side.LEFT) == {3, 5}
    single = fc(caffine(3), 2)
    assert descents(single, Side.LEFT) == descents(single, Side.RIGHT) == {2}


def test_commutation_class():
    assert commutation_class(caffine(3), [1, 3]) == {(1, 3), (3, 1)}
    assert commutation_class(caffine(3), [1, 2]) == {(1, 2)}


def test_enumerate_b2():
    elements = enumerate_fc(B2, 4)
    assert len(elements) == 7
    assert {e.word for e in elements} == {(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1), (2, 1, 2)}


def test_enumerate_zero_length_is_identity():
    for g in (B2, caffine(4), CoxeterGraph(GraphKind.A, 3)):
        out = enumerate_fc(g, 0)
        assert len(out) == 1 and out[0].is_identity


def test_enumerate_rejects_negative_length():
    with pytest.raises(InvalidLengthError):
        enumerate_fc(B2, -1)


def test_enumerate_affine_c2_counts():
    counts = {}
    for e in enumerate_fc(caffine(2), 3):
        counts[e.length] = counts.get(e.length, 0) + 1
    assert counts == {0: 1, 1: 3, 2: 5, 3: 8}


def test_first_row_is_left_descent_set():
    for e in enumerate_fc(caffine(3), 6):
        if not e.is_identity:
            assert set(e.cf_rows[0]) == descents(e, Side.LEFT)


def test_signed_perm_table_b2():
    table = SignedPermTable(2)
    assert len(table) == 8
    assert table.longest_length == 4
    longest = next(v for v in table.order if table.length(v) == 4)
    assert len(table.word_for(longest)) == 4


def test_oracle_counts():
    assert sum(bn_oracle_counts(2, 4).values()) == 7
    assert bn_oracle_counts(2, 0) == {0: 1}


def test_oracle_matches_enumeration_b3():
    counts = {}
    for e in enumerate_fc(B3, 9):
        counts[e.length] = counts.get(e.length, 0) + 1
    assert counts == bn_oracle_counts(3, 9)


def test_oracle_rank_limits():
    with pytest.raises(UnsupportedRankError):
        bn_oracle_counts(5, 3)
