# services/tl.py
"""Álgebra de Temperley–Lieb generalizada TL(X) sobre Z[d], base monomial b_w."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

import sympy

from services.coxeter import (
    CoxeterGraph,
    FcElement,
    Side,
    _canonical_rows,
    _precedence,
    canonical_form,
    descents,
    find_convex_chain,
    identity_element,
    is_fc_reduced,
)
from services.errors import GraphMismatchError, InvariantViolationError, UndefinedMoveError
from services.starops import StarMove, apply_weak_star

logger = logging.getLogger(__name__)

DELTA = sympy.Symbol("d")


def delta_poly(expr=0) -> sympy.Poly:
    return sympy.Poly(expr, DELTA, domain="ZZ")


def scalar_poly(two_exp: int, delta_exp: int) -> sympy.Poly:
    return delta_poly(2 ** two_exp * DELTA ** delta_exp)


@dataclass(frozen=True)
class TLMonomialResult:
    """Representa 2^two_exp * d^delta_exp * b_element."""

    two_exp: int
    delta_exp: int
    element: FcElement

    @property
    def coefficient(self) -> sympy.Poly:
        return scalar_poly(self.two_exp, self.delta_exp)

    @property
    def is_scalar_free(self) -> bool:
        return self.two_exp == 0 and self.delta_exp == 0


def _left_action(graph: CoxeterGraph, s: int, w: FcElement) -> Tuple[int, int, FcElement]:
    x = (s,) + w.word
    if is_fc_reduced(graph, x):
        return 0, 0, FcElement(graph, _canonical_rows(graph, x))
    if s in descents(w, Side.LEFT):
        return 0, 1, w

    found = find_convex_chain(graph, x, start=0)
    if found is None:
        raise InvariantViolationError(f"b{s} * b[{w}]: nenhuma cadeia convexa começando em s")
    chain, _, t = found
    below = _precedence(graph, x)
    in_chain = set(chain)
    up: list = []     # u: comutam com a cadeia ou ficam acima dela
    down: list = []   # v: ficam abaixo de alguma entrada da cadeia
    for q in range(1, len(x)):
        if q in in_chain:
            continue
        if any(below[q] >> c & 1 for c in chain):
            down.append(x[q])
        else:
            up.append(x[q])

    # b_u (b_s b_t b_s) b_v = b_u b_s b_v  ou  b_u (b_s b_t b_s b_t) b_v = 2 b_u b_s b_t b_v
    two = 1 if len(chain) == 4 else 0
    head = [s, t] if two else [s]
    delta = 0
    cur = canonical_form(graph, down)
    for g in reversed(up + head):
        k, m, cur = _left_action(graph, g, cur)
        two += k
        delta += m
    return two, delta, cur


def mult_generator(side: Side, i: int, m: TLMonomialResult) -> TLMonomialResult:
    graph = m.element.graph
    graph.check_generator(i)
    if side == Side.LEFT:
        k, d, out = _left_action(graph, i, m.element)
    else:
        # anti-involução de TL que fixa cada b_i: reverte as palavras
        k, d, out = _left_action(graph, i, m.element.reversed())
        out = out.reversed()
    return TLMonomialResult(m.two_exp + k, m.delta_exp + d, out)


def normalize_word(graph: CoxeterGraph, gens: Sequence[int]) -> TLMonomialResult:
    gens = graph.check_word(gens)
    res = TLMonomialResult(0, 0, identity_element(graph))
    for g in reversed(gens):
        res = mult_generator(Side.LEFT, g, res)
    logger.debug("TL_NORMALIZE word=%s k=%d m=%d w=%s", gens, res.two_exp, res.delta_exp, res.element)
    return res


# ---------- elementos de TL (combinações lineares) ----------

@dataclass(frozen=True)
class TLElement:
    graph: CoxeterGraph
    terms: Tuple[Tuple[FcElement, sympy.Poly], ...]

    @classmethod
    def from_dict(cls, graph: CoxeterGraph, terms: Dict[FcElement, sympy.Poly]) -> "TLElement":
        kept = [(e, p) for e, p in terms.items() if not p.is_zero]
        kept.sort(key=lambda ep: ep[0].sort_key())
        return cls(graph, tuple(kept))

    def as_dict(self) -> Dict[FcElement, sympy.Poly]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms


def tl_zero(graph: CoxeterGraph) -> TLElement:
    return TLElement(graph, ())


def tl_monomial(e: FcElement, coeff=1) -> TLElement:
    return TLElement.from_dict(e.graph, {e: delta_poly(coeff)})


def tl_identity(graph: CoxeterGraph) -> TLElement:
    return tl_monomial(identity_element(graph))


def tl_generator(graph: CoxeterGraph, i: int) -> TLElement:
    return tl_monomial(canonical_form(graph, [i]))


def tl_from_result(res: TLMonomialResult) -> TLElement:
    return TLElement.from_dict(res.element.graph, {res.element: res.coefficient})


def _same_graph(a: TLElement, b: TLElement) -> None:
    if a.graph != b.graph:
        raise GraphMismatchError(f"elementos de grafos diferentes: {a.graph.label} e {b.graph.label}")


def tl_add(a: TLElement, b: TLElement) -> TLElement:
    _same_graph(a, b)
    acc = a.as_dict()
    for e, p in b.terms:
        acc[e] = acc[e] + p if e in acc else p
    return TLElement.from_dict(a.graph, acc)


def tl_scale(a: TLElement, coeff) -> TLElement:
    c = coeff if isinstance(coeff, sympy.Poly) else delta_poly(coeff)
    return TLElement.from_dict(a.graph, {e: p * c for e, p in a.terms})


def tl_sum(graph: CoxeterGraph, items: Iterable[TLElement]) -> TLElement:
    out = tl_zero(graph)
    for x in items:
        out = tl_add(out, x)
    return out


def tl_multiply(a: TLElement, b: TLElement) -> TLElement:
    _same_graph(a, b)
    acc: Dict[FcElement, sympy.Poly] = {}
    for u, p in a.terms:
        for v, q in b.terms:
            res = normalize_word(a.graph, u.word + v.word)
            c = p * q * res.coefficient
            acc[res.element] = acc[res.element] + c if res.element in acc else c
    return TLElement.from_dict(a.graph, acc)


def tl_word(graph: CoxeterGraph, gens: Sequence[int]) -> TLElement:
    """Produto b_{g1} b_{g2} ... como elemento de TL."""
    return tl_from_result(normalize_word(graph, gens))


# ---------- identidades das reduções estrela fracas ----------

def weak_star_reverse_check(e: FcElement, move: StarMove) -> bool:
    """b_s b_t b_w = b_w (ligação 3) ou 2 b_w (ligação 4) quando w reduz por (s, t)."""
    if apply_weak_star(e, move) is None:
        raise UndefinedMoveError(f"movimento {move} não se aplica a [{e}]")
    res = TLMonomialResult(0, 0, e)
    res = mult_generator(move.side, move.t, res)
    res = mult_generator(move.side, move.s, res)
    expected = 1 if e.graph.bond(move.s, move.t) == 4 else 0
    return res.element == e and res.delta_exp == 0 and res.two_exp == expected
