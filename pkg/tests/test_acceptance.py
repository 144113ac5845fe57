from __future__ import annotations

import pytest

from conftest import caffine
from services.acceptance import classification_check, enumeration_oracle_check, finite_max_len
from services.coxeter import CoxeterGraph, GraphKind
from services.errors import UnsupportedRankError
from services.theta import coherence_sweep, deco_confluence_sweep, relations_check, verify_faithfulness


def test_finite_max_len():
    assert finite_max_len(CoxeterGraph(GraphKind.B, 2)) == 3
    with pytest.raises(UnsupportedRankError):
        finite_max_len(caffine(2))


def test_classification_b2():
    report = classification_check(CoxeterGraph(GraphKind.B, 2), 3)
    assert report.passed, report.failures
    assert report.checked == 5


def test_classification_odd_rank_small():
    report = classification_check(caffine(3), 8)
    assert report.passed, report.failures


def test_faithfulness_odd_rank_small():
    report = verify_faithfulness(caffine(3), 7)
    assert report.passed, report


@pytest.mark.slow
def test_enumeration_oracle():
    report = enumeration_oracle_check()
    assert report.passed, report.failures


@pytest.mark.slow
@pytest.mark.parametrize("kind", [GraphKind.B, GraphKind.BPRIME])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_classification_finite(kind, n):
    g = CoxeterGraph(kind, n)
    report = classification_check(g, finite_max_len(g))
    assert report.passed, report.failures


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4])
def test_classification_affine(n):
    report = classification_check(caffine(n), 12)
    assert report.passed, report.failures


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_relations_larger_ranks(n):
    assert relations_check(n).passed


@pytest.mark.slow
@pytest.mark.parametrize("n,max_len", [(2, 12), (3, 12), (4, 10)])
def test_faithfulness(n, max_len):
    report = verify_faithfulness(caffine(n), max_len)
    assert report.passed, report


@pytest.mark.slow
def test_coherence():
    report = coherence_sweep(5, 10_000, 20, seed=20240501)
    assert report.passed, report.failures[:5]


@pytest.mark.slow
def test_deco_confluence():
    report = deco_confluence_sweep(1000, 25, 10, seed=20240501)
    assert report.passed, report.failures[:5]
