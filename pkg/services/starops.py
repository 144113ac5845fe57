# services/starops.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from services.coxeter import (
    CoxeterGraph,
    FcElement,
    GraphKind,
    Side,
    _canonical_rows,
    descents,
    is_fc_reduced,
)
from services.errors import InvalidGraphError
from services.heap import (
    TypeIDescriptor,
    TypeIFamily,
    TypeIIDescriptor,
    TypeIIForm,
    make_type_I,
    make_type_II,
)

logger = logging.getLogger(__name__)

_SIDE_ORDER = {Side.LEFT: 0, Side.RIGHT: 1}


@dataclass(frozen=True)
class StarMove:
    side: Side
    s: int
    t: int
    weak: bool = True

    def sort_key(self):
        return (_SIDE_ORDER[self.side], self.s, self.t)

    def __str__(self) -> str:
        return f"{self.side.value} s={self.s} t={self.t} {'weak' if self.weak else 'star'}"


@dataclass(frozen=True)
class ReductionTrace:
    start: FcElement
    moves: Tuple[StarMove, ...]
    end: FcElement


def _drop_left(e: FcElement, s: int) -> FcElement:
    first = tuple(x for x in e.cf_rows[0] if x != s)
    rest = tuple(x for row in e.cf_rows[1:] for x in row)
    return FcElement(e.graph, _canonical_rows(e.graph, first + rest))


def _star_left(e: FcElement, s: int, t: int, weak: bool) -> Optional[FcElement]:
    g = e.graph
    if s not in g.generators or t not in g.generators or g.bond(s, t) < 3:
        return None
    if s not in descents(e, Side.LEFT):
        return None
    sw = _drop_left(e, s)
    if t not in descents(sw, Side.LEFT):
        return None
    if weak and is_fc_reduced(g, (t,) + e.word):
        return None
    return sw


def _star(e: FcElement, m: StarMove, weak: bool) -> Optional[FcElement]:
    if m.side == Side.LEFT:
        return _star_left(e, m.s, m.t, weak)
    # lado direito = lado esquerdo do elemento invertido
    out = _star_left(e.reversed(), m.s, m.t, weak)
    return None if out is None else out.reversed()


def apply_weak_star(e: FcElement, m: StarMove) -> Optional[FcElement]:
    return _star(e, m, weak=True)


def apply_star(e: FcElement, m: StarMove) -> Optional[FcElement]:
    return _star(e, m, weak=False)


def _candidate_moves(graph: CoxeterGraph, weak: bool) -> List[StarMove]:
    moves = []
    for side in (Side.LEFT, Side.RIGHT):
        for s in graph.generators:
            for t in graph.neighbours(s):
                moves.append(StarMove(side, s, t, weak))
    return sorted(moves, key=StarMove.sort_key)


def weak_star_moves(e: FcElement) -> List[StarMove]:
    return [m for m in _candidate_moves(e.graph, True) if apply_weak_star(e, m) is not None]


def star_moves(e: FcElement) -> List[StarMove]:
    return [m for m in _candidate_moves(e.graph, False) if apply_star(e, m) is not None]


def is_irreducible(e: FcElement) -> bool:
    return not any(apply_weak_star(e, m) is not None for m in _candidate_moves(e.graph, True))


def is_star_irreducible(e: FcElement) -> bool:
    return not star_moves(e)


def reduce_to_irreducible(e: FcElement) -> ReductionTrace:
    """Aplica sempre o menor movimento definido (L antes de R, depois s, depois t)."""
    cur = e
    moves: List[StarMove] = []
    while True:
        nxt = None
        for m in _candidate_moves(cur.graph, True):
            nxt = apply_weak_star(cur, m)
            if nxt is not None:
                moves.append(m)
                break
        if nxt is None:
            break
        cur = nxt
    logger.debug("STAR_REDUCE start=%s moves=%d end=%s", e, len(moves), cur)
    return ReductionTrace(e, tuple(moves), cur)


# ---------- listas classificadas de irredutíveis ----------

def commuting_products(allowed: Iterable[int]) -> List[Tuple[int, ...]]:
    """Todos os produtos de geradores dois a dois comutantes (inclui o vazio)."""
    allowed = sorted(set(allowed))
    out: List[Tuple[int, ...]] = []

    def walk(idx: int, chosen: Tuple[int, ...]):
        if idx == len(allowed):
            out.append(chosen)
            return
        walk(idx + 1, chosen)
        x = allowed[idx]
        if not chosen or x - chosen[-1] > 1:
            walk(idx + 1, chosen + (x,))

    walk(0, ())
    return out


def _type_b_words(n: int, mirrored: bool) -> List[Tuple[int, ...]]:
    if not mirrored:
        gens = range(1, n + 1)
        a, b, blocked = 1, 2, {1, 2, 3}
    else:
        gens = range(2, n + 2)
        a, b, blocked = n + 1, n, {n - 1, n, n + 1}
    words = list(commuting_products(gens))
    for wp in commuting_products(x for x in gens if x not in blocked):
        words.append((a, b) + wp)
        words.append((b, a) + wp)
    return words


def _collect(graph: CoxeterGraph, words: Iterable[Sequence[int]], max_len: int) -> Dict:
    found: Dict = {}
    for w in words:
        if len(w) <= max_len and is_fc_reduced(graph, w):
            rows = _canonical_rows(graph, w)
            found.setdefault(rows, FcElement(graph, rows))
    return found


def _type_I_irreducibles(graph: CoxeterGraph, max_len: int) -> List[FcElement]:
    n = graph.n
    families = [
        (TypeIFamily.Z_R_EVEN, 1, 1, 1),
        (TypeIFamily.Z_L_EVEN, n + 1, n + 1, 1),
        (TypeIFamily.Z_L_ODD, n + 1, 1, 0),
        (TypeIFamily.Z_R_ODD, 1, n + 1, 0),
    ]
    out = []
    for fam, i, j, k in families:
        while True:
            e = make_type_I(graph, TypeIDescriptor(fam, i, j, k))
            if e.length > max_len:
                break
            out.append(e)
            k += 1
    return out


def _type_II_elements(graph: CoxeterGraph, max_len: int) -> List[FcElement]:
    out = [make_type_II(graph, TypeIIDescriptor(TypeIIForm.XO)),
           make_type_II(graph, TypeIIDescriptor(TypeIIForm.XE))]
    for form in (TypeIIForm.Y_K, TypeIIForm.XE_Y_K, TypeIIForm.XE_Y_K_XO, TypeIIForm.Y_K_XO):
        k = 0 if form == TypeIIForm.XE_Y_K_XO else 1
        while True:
            e = make_type_II(graph, TypeIIDescriptor(form, k))
            if e.length > max_len:
                break
            out.append(e)
            k += 1
    return [e for e in out if e.length <= max_len]


def classified_irreducibles(graph: CoxeterGraph, max_len: int) -> List[FcElement]:
    if graph.kind == GraphKind.A:
        raise InvalidGraphError("classificação disponível apenas para B, B' e C~")
    if graph.kind == GraphKind.B:
        found = _collect(graph, _type_b_words(graph.n, False), max_len)
    elif graph.kind == GraphKind.BPRIME:
        found = _collect(graph, _type_b_words(graph.n, True), max_len)
    else:
        products = []
        for u in _type_b_words(graph.n, False):
            for v in _type_b_words(graph.n, True):
                if not set(u) & set(v):
                    products.append(u + v)
        # produtos u·v com ligação 3 entre os suportes podem ser redutíveis (ex.: s1 s3 · s4 em C~4)
        found = {
            rows: e for rows, e in _collect(graph, products, max_len).items() if is_irreducible(e)
        }
        for e in _type_I_irreducibles(graph, max_len) + _type_II_elements(graph, max_len):
            found.setdefault(e.cf_rows, e)
    out = sorted(found.values(), key=FcElement.sort_key)
    logger.info("IRR_CLASSIFIED graph=%s max_len=%d count=%d", graph.label, max_len, len(out))
    return out
