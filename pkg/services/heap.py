# services/heap.py
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from services.coxeter import (
    CoxeterGraph,
    FcElement,
    GraphKind,
    canonical_form,
)
from services.errors import DescriptorError, EmptyElementError, InvalidGraphError


@dataclass(frozen=True)
class HeapEntry:
    position: int   # 1-based, na palavra de origem
    label: int
    row: int        # 1-based, linha da representação canônica


@dataclass(frozen=True)
class Heap:
    graph: CoxeterGraph
    entries: Tuple[HeapEntry, ...]
    # (p, q): a entrada q está coberta pela entrada p (p acima de q)
    covers: FrozenSet[Tuple[int, int]]

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        if not self.entries:
            return ()
        out: List[List[int]] = [[] for _ in range(max(e.row for e in self.entries))]
        for e in self.entries:
            out[e.row - 1].append(e.label)
        return tuple(tuple(sorted(r)) for r in out)

    def poset(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(e.position for e in self.entries)
        g.add_edges_from(self.covers)
        return g

    def leq(self, a: int, b: int) -> bool:
        """a <= b no heap (a acima de b)."""
        return a == b or nx.has_path(self.poset(), a, b)

    def antichain_size(self) -> int:
        # Dilworth: anticadeia máxima = N - emparelhamento máximo do grafo bipartido de comparabilidade
        if not self.entries:
            return 0
        closure = nx.transitive_closure_dag(self.poset())
        bip = nx.Graph()
        tops = [("u", e.position) for e in self.entries]
        bip.add_nodes_from(tops)
        bip.add_nodes_from(("v", e.position) for e in self.entries)
        bip.add_edges_from((("u", a), ("v", b)) for a, b in closure.edges)
        matching = nx.bipartite.maximum_matching(bip, top_nodes=tops)
        return len(self.entries) - len(matching) // 2


def build_heap_from_word(graph: CoxeterGraph, word: Sequence[int]) -> Heap:
    word = graph.check_word(word)
    order = nx.DiGraph()
    order.add_nodes_from(range(1, len(word) + 1))
    for j in range(len(word)):
        for i in range(j):
            if not graph.commutes(word[i], word[j]):
                order.add_edge(i + 1, j + 1)
    reduced = nx.transitive_reduction(order)
    levels: List[int] = []
    for j in range(len(word)):
        preds = [levels[i - 1] for i in order.predecessors(j + 1)]
        levels.append(1 + max(preds, default=0))
    entries = tuple(HeapEntry(p + 1, b, levels[p]) for p, b in enumerate(word))
    return Heap(graph, entries, frozenset(reduced.edges))


def build_heap(e: FcElement) -> Heap:
    return build_heap_from_word(e.graph, e.word)


def n_value(e: FcElement) -> int:
    if e.is_identity:
        raise EmptyElementError("n-valor não é definido para a identidade")
    return build_heap(e).antichain_size()


def render_heap(e: FcElement) -> str:
    """Grade monoespaçada: rótulo i na coluna 2i, uma linha de texto por linha do heap."""
    lines = []
    for row in e.cf_rows:
        width = 2 * max(row) + len(str(max(row)))
        cells = [" "] * width
        for i in row:
            for k, ch in enumerate(str(i)):
                cells[2 * i + k] = ch
        lines.append("".join(cells).rstrip())
    return "\n".join(lines)


# ---------- elementos do tipo I (zigue-zagues) ----------

class TypeIFamily(str, Enum):
    Z_IJ = "Z_ij"
    Z_L_EVEN = "Z_L_even"
    Z_L_ODD = "Z_L_odd"
    Z_R_EVEN = "Z_R_even"
    Z_R_ODD = "Z_R_odd"


@dataclass(frozen=True)
class TypeIDescriptor:
    family: TypeIFamily
    i: int
    j: int
    k: int = 0

    def __str__(self) -> str:
        if self.family == TypeIFamily.Z_IJ:
            return f"z[{self.i},{self.j}]"
        side = "L" if self.family in (TypeIFamily.Z_L_EVEN, TypeIFamily.Z_L_ODD) else "R"
        parity = 2 * self.k + (1 if self.family in (TypeIFamily.Z_L_ODD, TypeIFamily.Z_R_ODD) else 0)
        return f"z^{{{side},{parity}}}[{self.i},{self.j}]"


def _z(i: int, j: int) -> List[int]:
    step = 1 if j >= i else -1
    return list(range(i, j + step, step))


def _type_I_word(n: int, d: TypeIDescriptor) -> List[int]:
    top = n + 1
    i, j, k = d.i, d.j, d.k
    fam = d.family
    if fam == TypeIFamily.Z_IJ:
        if k != 0 or not (1 <= i <= top and 1 <= j <= top):
            raise DescriptorError(f"descritor fora dos limites: {d}")
        return _z(i, j)
    if fam == TypeIFamily.Z_L_EVEN:
        if not (1 < i <= top and 1 < j <= top and k >= 1):
            raise DescriptorError(f"descritor fora dos limites: {d}")
        return _z(i, 2) + (_z(1, n) + _z(top, 2)) * (k - 1) + _z(1, n) + _z(top, j)
    if fam == TypeIFamily.Z_L_ODD:
        # i = 1 só no caso degenerado s1 s2 s1
        edge = i == 1 and j == 1 and k == 0
        if not (edge or (1 < i <= top and 1 <= j < top and k >= 0)):
            raise DescriptorError(f"descritor fora dos limites: {d}")
        return _z(i, 2) + (_z(1, n) + _z(top, 2)) * k + _z(1, j)
    if fam == TypeIFamily.Z_R_EVEN:
        if not (1 <= i < top and 1 <= j < top and k >= 1):
            raise DescriptorError(f"descritor fora dos limites: {d}")
        return _z(i, n) + (_z(top, 2) + _z(1, n)) * (k - 1) + _z(top, 2) + _z(1, j)
    # i = n+1 só no caso degenerado s_{n+1} s_n s_{n+1}
    edge = i == top and j == top and k == 0
    if not (edge or (1 <= i < top and 1 < j <= top and k >= 0)):
        raise DescriptorError(f"descritor fora dos limites: {d}")
    return _z(i, n) + (_z(top, 2) + _z(1, n)) * k + _z(top, j)


def make_type_I(graph: CoxeterGraph, desc: TypeIDescriptor) -> FcElement:
    if desc.family != TypeIFamily.Z_IJ and graph.kind != GraphKind.CAFFINE:
        raise InvalidGraphError("zigue-zagues do tipo I só existem em C~n")
    if desc.family == TypeIFamily.Z_IJ:
        for x in (desc.i, desc.j):
            graph.check_generator(x)
    return canonical_form(graph, _type_I_word(graph.n, desc))


def is_type_I(e: FcElement) -> Optional[TypeIDescriptor]:
    """Descritor do zigue-zague quando n(e) = 1; a primeira família que reproduz a palavra vence."""
    if e.is_identity or n_value(e) != 1:
        return None
    w = e.word
    if e.graph.kind != GraphKind.CAFFINE:
        monotone = all(abs(w[p + 1] - w[p]) == 1 for p in range(len(w) - 1)) and len(set(w)) == len(w)
        return TypeIDescriptor(TypeIFamily.Z_IJ, w[0], w[-1]) if monotone else None
    for fam in TypeIFamily:
        k = 0
        while True:
            try:
                word = _type_I_word(e.graph.n, TypeIDescriptor(fam, w[0], w[-1], k))
            except DescriptorError:
                word = None
            if word is not None:
                if tuple(word) == w:
                    return TypeIDescriptor(fam, w[0], w[-1], k)
                if len(word) > len(w):
                    break
            elif k > 0 or fam == TypeIFamily.Z_IJ:
                break
            k += 1
    return None


# ---------- elementos do tipo II ----------

class TypeIIForm(str, Enum):
    XO = "xO"
    XE = "xE"
    Y_K = "y_k"
    XE_Y_K = "xE_y_k"
    XE_Y_K_XO = "xE_y_k_xO"
    Y_K_XO = "y_k_xO"


@dataclass(frozen=True)
class TypeIIDescriptor:
    form: TypeIIForm
    k: int = 0

    def __str__(self) -> str:
        if self.form in (TypeIIForm.XO, TypeIIForm.XE):
            return self.form.value
        return self.form.value.replace("y_k", f"y_{self.k}")


def odd_even_sets(n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Índices ímpares e pares de 1..n+1."""
    return tuple(range(1, n + 2, 2)), tuple(range(2, n + 2, 2))


def _type_II_rows(n: int, d: TypeIIDescriptor) -> List[Tuple[int, ...]]:
    odd, even = odd_even_sets(n)
    k = d.k
    if d.form == TypeIIForm.XO:
        return [odd]
    if d.form == TypeIIForm.XE:
        return [even]
    # xE y_0 xO = xE xO também é um produto alternado
    minimum = 0 if d.form == TypeIIForm.XE_Y_K_XO else 1
    if k < minimum:
        raise DescriptorError(f"k inválido para {d.form.value}: {k}")
    y = [odd, even] * k
    if d.form == TypeIIForm.Y_K:
        return y
    if d.form == TypeIIForm.XE_Y_K:
        return [even] + y
    if d.form == TypeIIForm.XE_Y_K_XO:
        return [even] + y + [odd]
    return y + [odd]


def make_type_II(graph: CoxeterGraph, desc: TypeIIDescriptor) -> FcElement:
    if graph.kind != GraphKind.CAFFINE:
        raise InvalidGraphError("elementos do tipo II só existem em C~n")
    word = [i for row in _type_II_rows(graph.n, desc) for i in row]
    return canonical_form(graph, word)


def is_type_II(e: FcElement) -> Optional[TypeIIDescriptor]:
    if e.graph.kind != GraphKind.CAFFINE or e.is_identity:
        return None
    odd, even = odd_even_sets(e.graph.n)
    rows = e.cf_rows
    expected = odd if rows[0] == odd else even if rows[0] == even else None
    if expected is None:
        return None
    for row in rows:
        if row != expected:
            return None
        expected = even if expected == odd else odd
    r = len(rows)
    if rows[0] == odd:
        if r == 1:
            return TypeIIDescriptor(TypeIIForm.XO)
        if r % 2 == 0:
            return TypeIIDescriptor(TypeIIForm.Y_K, r // 2)
        return TypeIIDescriptor(TypeIIForm.Y_K_XO, (r - 1) // 2)
    if r == 1:
        return TypeIIDescriptor(TypeIIForm.XE)
    if r % 2 == 1:
        return TypeIIDescriptor(TypeIIForm.XE_Y_K, (r - 1) // 2)
    return TypeIIDescriptor(TypeIIForm.XE_Y_K_XO, (r - 2) // 2)


def type_II_stated_n_value(n: int) -> int:
    """Valor l = ceil((n-1)/2) enunciado para o n-valor dos elementos do tipo II."""
    return math.ceil((n - 1) / 2)
