# services/theta.py
"""Homomorfismo theta: TL(C~n) -> D_n e as varreduras de verificação."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from services.coxeter import (
    CoxeterGraph,
    FcElement,
    GraphKind,
    Side,
    descents,
    enumerate_fc,
)
from services.diagram import (
    AdmissibleDiagram,
    DiagramElement,
    Face,
    factor_into_simples,
    from_generator_word,
    validate_admissible,
)
from services.errors import AlgebraError, InvariantViolationError
from services.heap import is_type_I, is_type_II, n_value, type_II_stated_n_value
from services.starops import apply_weak_star, weak_star_moves
from services.tl import TLElement, normalize_word, weak_star_reverse_check
from services.verlinde import deco_normal_form, normalize_randomly, random_deco_word

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def theta_monomial(e: FcElement) -> AdmissibleDiagram:
    res = from_generator_word(e.graph, e.word)
    if not res.is_scalar_free:
        raise InvariantViolationError(
            f"theta(b[{e}]) produziu 2^{res.two_exp} d^{res.delta_exp}; esperado um único diagrama"
        )
    return res.diagram


def theta_element(x: TLElement) -> DiagramElement:
    acc: Dict[AdmissibleDiagram, object] = {}
    for e, p in x.terms:
        d = theta_monomial(e)
        acc[d] = acc[d] + p if d in acc else p
    return DiagramElement.from_dict(x.graph.n, acc)


def descent_edge_check(e: FcElement) -> bool:
    d = theta_monomial(e)
    return (
        set(d.simple_edges(Face.NORTH)) == set(descents(e, Side.LEFT))
        and set(d.simple_edges(Face.SOUTH)) == set(descents(e, Side.RIGHT))
    )


def inverse_theta(
    d: AdmissibleDiagram, graph: Optional[CoxeterGraph] = None, max_len: Optional[int] = None
) -> FcElement:
    """Elemento w com theta(b_w) = d, a partir de uma fatoração de d em simples."""
    graph = graph or CoxeterGraph(GraphKind.CAFFINE, d.n)
    word = factor_into_simples(d, max_len)
    res = normalize_word(graph, word)
    if not res.is_scalar_free:
        raise InvariantViolationError(
            f"fatoração {word} produz escalar 2^{res.two_exp} d^{res.delta_exp}"
        )
    if theta_monomial(res.element) != d:
        raise InvariantViolationError(f"theta(b[{res.element}]) não reproduz o diagrama")
    return res.element


def _as_affine(e: FcElement) -> FcElement:
    if e.graph.kind == GraphKind.CAFFINE:
        return e
    return FcElement(CoxeterGraph(GraphKind.CAFFINE, e.graph.n), e.cf_rows)


# ---------- relatórios ----------

@dataclass
class ThetaReport:
    graph: CoxeterGraph
    max_len: int
    checked: int = 0
    scalar_failures: List[str] = field(default_factory=list)
    collision_failures: List[Tuple[str, str]] = field(default_factory=list)
    descent_failures: List[str] = field(default_factory=list)
    roundtrip_failures: List[str] = field(default_factory=list)
    structure_failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def failure_count(self) -> int:
        return (
            len(self.scalar_failures) + len(self.collision_failures) + len(self.descent_failures)
            + len(self.roundtrip_failures) + len(self.structure_failures)
        )

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def merge(self, other: "ThetaReport") -> "ThetaReport":
        out = ThetaReport(self.graph, max(self.max_len, other.max_len), self.checked + other.checked)
        for name in ("scalar_failures", "collision_failures", "descent_failures",
                     "roundtrip_failures", "structure_failures", "notes"):
            getattr(out, name).extend(getattr(self, name) + getattr(other, name))
        return out


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _structure_checks(e: FcElement, d: AdmissibleDiagram) -> List[str]:
    out = []
    affine = _as_affine(e)
    if not e.is_identity:
        type_I = is_type_I(affine) is not None
        if (d.a_value == 1) != type_I:
            out.append(f"[{e}]: a(d_w)={d.a_value} mas tipo I={type_I}")
    for m in weak_star_moves(e):
        v = apply_weak_star(e, m)
        if not weak_star_reverse_check(e, m):
            out.append(f"[{e}] {m}: identidade b_s b_t b_w falhou")
        if not v.is_identity and n_value(v) != n_value(e):
            out.append(f"[{e}] {m}: n-valor mudou para [{v}]")
        if theta_monomial(v).a_value != d.a_value:
            out.append(f"[{e}] {m}: a-valor mudou para [{v}]")
    return out


def verify_faithfulness(graph: CoxeterGraph, max_len: int, *, structure: bool = True) -> ThetaReport:
    report = ThetaReport(graph, max_len)
    seen: Dict[AdmissibleDiagram, FcElement] = {}
    flagged_type_II = False
    for e in enumerate_fc(graph, max_len):
        report.checked += 1
        try:
            d = theta_monomial(e)
        except InvariantViolationError:
            report.scalar_failures.append(str(e))
            continue
        if d in seen:
            report.collision_failures.append((str(seen[d]), str(e)))
        else:
            seen[d] = e
        if not descent_edge_check(e):
            report.descent_failures.append(str(e))
        violations = validate_admissible(d)
        if violations:
            report.structure_failures.append(f"[{e}]: " + "; ".join(violations))
        try:
            word = factor_into_simples(d)
            back = from_generator_word(graph, word)
            if not back.is_scalar_free or back.diagram != d:
                report.roundtrip_failures.append(str(e))
        except AlgebraError as exc:
            report.roundtrip_failures.append(f"{e}: {exc}")
        if structure:
            report.structure_failures.extend(_structure_checks(e, d))
        if not flagged_type_II and graph.kind == GraphKind.CAFFINE and is_type_II(e) is not None:
            nv, stated = n_value(e), type_II_stated_n_value(graph.n)
            if nv != stated:
                flagged_type_II = True
                report.notes.append(
                    f"tipo II: anticadeia máxima {nv} em [{e}], valor enunciado {stated}"
                )
    logger.info(
        "THETA_VERIFY graph=%s max_len=%d checked=%d failures=%d",
        graph.label, max_len, report.checked, report.failure_count,
    )
    return report


def coherence_sweep(n_max: int, count: int, max_len: int, seed: int) -> SweepReport:
    """Compara normalize_word com from_generator_word em palavras aleatórias."""
    rng = random.Random(seed)
    report = SweepReport("coherence")
    for _ in range(count):
        graph = CoxeterGraph(GraphKind.CAFFINE, rng.randint(2, n_max))
        word = [rng.choice(graph.generators) for _ in range(rng.randint(0, max_len))]
        algebra = normalize_word(graph, word)
        diagram = from_generator_word(graph, word)
        report.checked += 1
        if (algebra.two_exp, algebra.delta_exp) != (diagram.two_exp, diagram.delta_exp):
            report.failures.append(
                f"{graph.label} {word}: TL (2^{algebra.two_exp}, d^{algebra.delta_exp}) "
                f"diagrama (2^{diagram.two_exp}, d^{diagram.delta_exp})"
            )
        elif theta_monomial(algebra.element) != diagram.diagram:
            report.failures.append(f"{graph.label} {word}: theta(b[{algebra.element}]) difere")
    logger.info("COHERENCE checked=%d failures=%d", report.checked, len(report.failures))
    return report


def deco_confluence_sweep(count: int, max_len: int, orders: int, seed: int) -> SweepReport:
    rng = random.Random(seed)
    report = SweepReport("deco-confluence")
    for _ in range(count):
        word = random_deco_word(rng, max_len)
        expected = deco_normal_form(word)
        report.checked += 1
        for _ in range(orders):
            got = normalize_randomly(word, rng)
            if got != expected:
                report.failures.append(f"{word!r}: {got} != {expected}")
                break
    logger.info("DECO_CONFLUENCE checked=%d failures=%d", report.checked, len(report.failures))
    return report


def relations_check(n: int) -> SweepReport:
    """As quatro relações de TL como identidades entre diagramas."""
    graph = CoxeterGraph(GraphKind.CAFFINE, n)
    report = SweepReport(f"relations n={n}")

    def fold(word):
        return from_generator_word(graph, word)

    def expect(word, two, delta, target):
        res = fold(word)
        report.checked += 1
        if (res.two_exp, res.delta_exp, res.diagram) != (two, delta, target.diagram):
            report.failures.append(f"{graph.label} {word}")

    for i in graph.generators:
        expect([i, i], 0, 1, fold([i]))
        for j in graph.generators:
            if j == i:
                continue
            bond = graph.bond(i, j)
            if bond == 2:
                expect([i, j], 0, 0, fold([j, i]))
            elif bond == 3:
                expect([i, j, i], 0, 0, fold([i]))
            else:
                expect([i, j, i, j], 1, 0, fold([i, j]))
    return report
