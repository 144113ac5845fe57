# services/coxeter.py
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import chain
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from services.errors import (
    InvalidGeneratorError,
    InvalidGraphError,
    InvalidLengthError,
    NotFullyCommutativeError,
    UnsupportedRankError,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Rows = Tuple[Tuple[int, ...], ...]


class GraphKind(str, Enum):
    A = "a"
    B = "b"
    BPRIME = "bprime"
    CAFFINE = "caffine"


class Side(str, Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True)
class CoxeterGraph:
    kind: GraphKind
    n: int

    def __post_init__(self):
        minimum = 1 if self.kind == GraphKind.A else 2
        if self.n < minimum:
            raise InvalidGraphError(f"posto inválido para {self.kind.value}: n={self.n}")

    @property
    def generators(self) -> Tuple[int, ...]:
        if self.kind == GraphKind.BPRIME:
            return tuple(range(2, self.n + 2))
        if self.kind == GraphKind.CAFFINE:
            return tuple(range(1, self.n + 2))
        return tuple(range(1, self.n + 1))

    @property
    def label(self) -> str:
        names = {GraphKind.A: "A", GraphKind.B: "B", GraphKind.BPRIME: "B'", GraphKind.CAFFINE: "C~"}
        return f"{names[self.kind]}{self.n}"

    def check_generator(self, i: int) -> int:
        if i not in self.generators:
            raise InvalidGeneratorError(f"gerador s{i} não existe em {self.label}")
        return i

    def check_word(self, word: Iterable[int]) -> Word:
        return tuple(self.check_generator(int(i)) for i in word)

    def bond(self, i: int, j: int) -> int:
        self.check_generator(i)
        self.check_generator(j)
        if i == j:
            return 1
        if abs(i - j) > 1:
            return 2
        if self.kind == GraphKind.A:
            return 3
        # as pontas de C~n (e suas restrições B, B') têm ligação 4
        if {i, j} == {1, 2} or {i, j} == {self.n, self.n + 1}:
            return 4
        return 3

    def commutes(self, i: int, j: int) -> bool:
        return i != j and abs(i - j) > 1

    def neighbours(self, i: int) -> Tuple[int, ...]:
        return tuple(j for j in (i - 1, i + 1) if j in self.generators)


def parse_graph(kind: str, n: int) -> CoxeterGraph:
    try:
        gk = GraphKind(str(kind).strip().lower())
    except ValueError:
        raise InvalidGraphError(f"tipo de grafo desconhecido: {kind!r}") from None
    return CoxeterGraph(gk, int(n))


@dataclass(frozen=True)
class FcElement:
    """Elemento totalmente comutativo na forma de Cartier–Foata (linhas do heap)."""

    graph: CoxeterGraph
    cf_rows: Rows

    @property
    def word(self) -> Word:
        return tuple(chain.from_iterable(self.cf_rows))

    @property
    def length(self) -> int:
        return sum(len(r) for r in self.cf_rows)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.cf_rows

    def sort_key(self):
        return (self.length, self.word)

    def reversed(self) -> "FcElement":
        return FcElement(self.graph, _canonical_rows(self.graph, self.word[::-1]))

    def __str__(self) -> str:
        return "|".join(" ".join(str(i) for i in row) for row in self.cf_rows)


def identity_element(graph: CoxeterGraph) -> FcElement:
    return FcElement(graph, ())


# ---------- heap da palavra (ordem parcial por não-comutação) ----------

def _precedence(graph: CoxeterGraph, word: Sequence[int]) -> List[int]:
    """below[j] = bitset das posições i < j com i <= j na ordem do heap."""
    below: List[int] = []
    for j, b in enumerate(word):
        mask = 0
        for i in range(j):
            if not graph.commutes(word[i], b):
                mask |= below[i] | (1 << i)
        below.append(mask)
    return below


def _is_trace_reduced(graph: CoxeterGraph, word: Sequence[int]) -> bool:
    last: Dict[int, int] = {}
    for q, s in enumerate(word):
        p = last.get(s)
        if p is not None:
            if not any(abs(word[r] - s) == 1 for r in range(p + 1, q)):
                return False
        last[s] = q
    return True


def find_convex_chain(
    graph: CoxeterGraph,
    word: Sequence[int],
    start: Optional[int] = None,
) -> Optional[Tuple[Tuple[int, ...], int, int]]:
    """Procura uma cadeia convexa s t s (m=3) ou s t s t (m=4).

    Retorna (posições, s, t) com s = letra da primeira posição, ou None.
    Com `start`, só aceita cadeias que começam nessa posição.
    """
    word = tuple(word)
    if len(word) < 3:
        return None
    below = _precedence(graph, word)
    pairs = set()
    for s in set(word):
        for t in graph.neighbours(s):
            pairs.add((min(s, t), max(s, t)))
    for s, t in sorted(pairs):
        m = graph.bond(s, t)
        occ = [p for p, x in enumerate(word) if x in (s, t)]
        for k in range(len(occ) - m + 1):
            window = occ[k:k + m]
            if start is not None and window[0] != start:
                continue
            letters = [word[p] for p in window]
            if any(letters[r] == letters[r + 1] for r in range(m - 1)):
                continue
            first, last = window[0], window[-1]
            interval = {
                x for x in range(first, last + 1)
                if (x == first or below[x] >> first & 1) and (x == last or below[last] >> x & 1)
            }
            if interval == set(window):
                return tuple(window), letters[0], letters[1]
    return None


def is_fc_reduced(graph: CoxeterGraph, w: Sequence[int]) -> bool:
    word = graph.check_word(w)
    if not _is_trace_reduced(graph, word):
        return False
    return find_convex_chain(graph, word) is None


def _canonical_rows(graph: CoxeterGraph, word: Sequence[int]) -> Rows:
    levels: List[int] = []
    for j, b in enumerate(word):
        lvl = 1
        for i in range(j):
            if not graph.commutes(word[i], b):
                lvl = max(lvl, levels[i] + 1)
        levels.append(lvl)
    if not levels:
        return ()
    rows: List[List[int]] = [[] for _ in range(max(levels))]
    for b, lvl in zip(word, levels):
        rows[lvl - 1].append(b)
    return tuple(tuple(sorted(r)) for r in rows)


def canonical_form(graph: CoxeterGraph, w: Sequence[int]) -> FcElement:
    word = graph.check_word(w)
    if not is_fc_reduced(graph, word):
        raise NotFullyCommutativeError(
            f"palavra {' '.join(map(str, word)) or '(vazia)'} não é reduzida e totalmente comutativa em {graph.label}"
        )
    return FcElement(graph, _canonical_rows(graph, word))


def descents(e: FcElement, side: Side) -> FrozenSet[int]:
    if e.is_identity:
        return frozenset()
    if side == Side.LEFT:
        return frozenset(e.cf_rows[0])
    return frozenset(_canonical_rows(e.graph, e.word[::-1])[0])


def commutation_class(graph: CoxeterGraph, w: Sequence[int]) -> Set[Word]:
    """Todas as palavras alcançáveis por trocas de letras vizinhas que comutam."""
    start = graph.check_word(w)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for p in range(len(cur) - 1):
            a, b = cur[p], cur[p + 1]
            if graph.commutes(a, b):
                nxt = cur[:p] + (b, a) + cur[p + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


# ---------- enumeração ----------

def iter_fc_layers(graph: CoxeterGraph) -> Iterator[List[FcElement]]:
    """Camadas de W_c por comprimento: [e], depois comprimento 1, 2, ...

    Termina sozinho quando o conjunto é finito (tipos A, B, B').
    """
    layer = [identity_element(graph)]
    length = 0
    while layer:
        yield layer
        found: Dict[Rows, FcElement] = {}
        for e in layer:
            word = e.word
            left = descents(e, Side.LEFT)
            right = descents(e, Side.RIGHT)
            for s in graph.generators:
                candidates = []
                if s not in left:
                    candidates.append((s,) + word)
                if s not in right:
                    candidates.append(word + (s,))
                for cand in candidates:
                    if is_fc_reduced(graph, cand):
                        rows = _canonical_rows(graph, cand)
                        if rows not in found:
                            found[rows] = FcElement(graph, rows)
        length += 1
        layer = sorted(found.values(), key=lambda x: x.word)
        logger.debug("FC_LAYER graph=%s len=%d size=%d", graph.label, length, len(layer))


@lru_cache(maxsize=64)
def _enumerate_cached(graph: CoxeterGraph, max_len: int) -> Tuple[FcElement, ...]:
    out: List[FcElement] = []
    for length, layer in enumerate(iter_fc_layers(graph)):
        if length > max_len:
            break
        out.extend(layer)
    logger.info("FC_ENUM graph=%s max_len=%d count=%d", graph.label, max_len, len(out))
    return tuple(out)


def enumerate_fc(graph: CoxeterGraph, max_len: int) -> List[FcElement]:
    if max_len < 0:
        raise InvalidLengthError(f"max_len deve ser >= 0, recebido {max_len}")
    return list(_enumerate_cached(graph, int(max_len)))


# ---------- oráculo de força bruta para B_n (permutações com sinal) ----------

SignedPerm = Tuple[int, ...]


def _apply_generator(value: SignedPerm, s: int) -> SignedPerm:
    # s1 troca o sinal da posição 1; s_i (i >= 2) troca as posições i-1 e i
    v = list(value)
    if s == 1:
        v[0] = -v[0]
    else:
        v[s - 2], v[s - 1] = v[s - 1], v[s - 2]
    return tuple(v)


class SignedPermTable:
    """Comprimentos de W(B_n) por BFS no grafo de Cayley a partir da identidade."""

    def __init__(self, n: int):
        if n < 2:
            raise UnsupportedRankError(f"B_n exige n >= 2 (recebido {n})")
        self.n = n
        self.graph = CoxeterGraph(GraphKind.B, n)
        identity = tuple(range(1, n + 1))
        self.elements: Dict[SignedPerm, int] = {identity: 0}
        self.order: List[SignedPerm] = [identity]
        queue = deque([identity])
        while queue:
            cur = queue.popleft()
            for s in self.graph.generators:
                nxt = _apply_generator(cur, s)
                if nxt not in self.elements:
                    self.elements[nxt] = self.elements[cur] + 1
                    self.order.append(nxt)
                    queue.append(nxt)

    def __len__(self) -> int:
        return len(self.elements)

    def length(self, value: SignedPerm) -> int:
        return self.elements[value]

    @property
    def longest_length(self) -> int:
        return max(self.elements.values())

    def right_descents(self, value: SignedPerm) -> List[int]:
        lv = self.elements[value]
        return [s for s in self.graph.generators if self.elements[_apply_generator(value, s)] == lv - 1]

    def word_for(self, value: SignedPerm) -> Word:
        """Uma expressão reduzida, descendo sempre pela menor descida à direita."""
        out: List[int] = []
        cur = value
        while self.elements[cur]:
            s = self.right_descents(cur)[0]
            out.append(s)
            cur = _apply_generator(cur, s)
        return tuple(reversed(out))


def bn_oracle_counts(n: int, max_len: int) -> Dict[int, int]:
    """Conta elementos fc de B_n por comprimento, sem usar enumerate_fc.

    Para cada elemento guarda o conjunto de classes de comutação das suas
    expressões reduzidas; fc <=> exatamente uma classe.
    """
    if not 2 <= n <= 4:
        raise UnsupportedRankError(f"oráculo de B_n suporta 2 <= n <= 4 (recebido {n})")
    table = SignedPermTable(n)
    graph = table.graph
    classes: Dict[SignedPerm, Set[Rows]] = {}
    counts: Dict[int, int] = {}
    for value in table.order:
        lv = table.length(value)
        if lv == 0:
            classes[value] = {()}
        else:
            cur: Set[Rows] = set()
            for s in table.right_descents(value):
                prev = _apply_generator(value, s)
                for rows in classes[prev]:
                    word = tuple(chain.from_iterable(rows)) + (s,)
                    cur.add(_canonical_rows(graph, word))
            classes[value] = cur
        if lv <= max_len and len(classes[value]) == 1:
            counts[lv] = counts.get(lv, 0) + 1
    logger.info("BN_ORACLE n=%d max_len=%d total=%d", n, max_len, sum(counts.values()))
    return dict(sorted(counts.items()))
