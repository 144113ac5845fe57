# services/acceptance.py
"""Verificações de aceitação que não dependem de diagramas."""
from __future__ import annotations

import logging
from typing import Dict, Iterable

from services.coxeter import (
    CoxeterGraph,
    GraphKind,
    SignedPermTable,
    bn_oracle_counts,
    enumerate_fc,
    iter_fc_layers,
)
from services.errors import UnsupportedRankError
from services.starops import classified_irreducibles, is_irreducible
from services.theta import SweepReport

logger = logging.getLogger(__name__)


def _counts_by_length(graph: CoxeterGraph, max_len: int) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for e in enumerate_fc(graph, max_len):
        counts[e.length] = counts.get(e.length, 0) + 1
    return counts


def enumeration_oracle_check(ranks: Iterable[int] = (2, 3, 4)) -> SweepReport:
    report = SweepReport("enumeration-oracle")
    b2 = enumerate_fc(CoxeterGraph(GraphKind.B, 2), 4)
    report.checked += 1
    if len(b2) != 7:
        report.failures.append(f"B2 até comprimento 4: {len(b2)} elementos (esperado 7)")
    for n in ranks:
        max_len = SignedPermTable(n).longest_length
        expected = bn_oracle_counts(n, max_len)
        got = _counts_by_length(CoxeterGraph(GraphKind.B, n), max_len)
        report.checked += 1
        if got != expected:
            report.failures.append(f"B{n}: contagens {got} != oráculo {expected}")
    return report


def _all_fc(graph: CoxeterGraph, max_len: int):
    for length, layer in enumerate(iter_fc_layers(graph)):
        if length > max_len:
            return
        yield from layer


def classification_check(graph: CoxeterGraph, max_len: int) -> SweepReport:
    """Conjunto de irredutíveis por força bruta == lista classificada."""
    report = SweepReport(f"classification {graph.label} max_len={max_len}")
    brute = {e.cf_rows for e in _all_fc(graph, max_len) if is_irreducible(e)}
    listed = {e.cf_rows for e in classified_irreducibles(graph, max_len)}
    report.checked = len(brute | listed)
    for rows in sorted(brute - listed):
        report.failures.append(f"irredutível fora da lista: {rows}")
    for rows in sorted(listed - brute):
        report.failures.append(f"listado mas não irredutível: {rows}")
    logger.info("CLASSIFY_CHECK graph=%s max_len=%d brute=%d listed=%d",
                graph.label, max_len, len(brute), len(listed))
    return report


def finite_max_len(graph: CoxeterGraph) -> int:
    """Comprimento máximo de um elemento fc em B_n ou B'_n (ambos finitos)."""
    if graph.kind == GraphKind.CAFFINE:
        raise UnsupportedRankError("C~n tem infinitos elementos fc")
    longest = 0
    for length, layer in enumerate(iter_fc_layers(graph)):
        if layer:
            longest = length
    return longest
